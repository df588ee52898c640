//! Intersection numbers on blow-ups along smooth centers.

pub mod intersect;
pub mod restriction;
pub mod series;

pub use intersect::{
    blowup_power, grassmannian_tangent_on_veronese, preset_inputs, run_preset, segre_from_chern,
    symplectic_tangency_number, AmbientData, IntersectionInputs, IntersectionResult, Preset,
    SegreData,
};
pub use restriction::{restriction_coefficients, RestrictionReport};
