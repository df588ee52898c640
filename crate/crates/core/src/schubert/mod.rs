//! The cohomology ring of the Lagrangian Grassmannian and related counts.

pub mod chern;
pub mod ring;

pub use chern::{chern_tangent, moduli_dimension, ChernReport, ModuliDimension};
pub use ring::{
    generator_product, lg_degree, lg_dimension, ring_tables, strict_partition_count, RingTable, SchubertElt,
    StrictPartition, MAX_VERIFIED_RANK,
};
