//! Exact computational toolkit for the wonderful compactification of the
//! space of symmetric symplectic matrices.
//!
//! The crate is organized in layers:
//!
//! * [`algebra`]: exact rationals, sparse multivariate polynomials, dense
//!   matrices, symmetric matrices of indeterminates and minors.
//! * [`symplectic`]: orbit equations of `X_{2r}`, a seeded symplectic sampler,
//!   stratification by rank, symplectic normal forms, tangent cones, secant
//!   variety formulas, the `X_4 = G(1,4)` identification and the quadric
//!   rulings check.
//! * [`picard`]: divisor-class ledgers, rational polyhedral cones, GKZ chamber
//!   fans and the Fano classification of the Kontsevich space of conics.
//! * [`schubert`]: the cohomology ring of `LG(r,2r)` built from its quadratic
//!   presentation, Chern classes of the tangent bundle and moduli dimensions.
//! * [`blowup`]: Segre classes and top self-intersections on blow-ups,
//!   including the enumerative numbers 92, 40 and 3264.
//! * [`cli`]: the command-line front end, also usable in-process.

pub mod algebra;
pub mod blowup;
pub mod cli;
pub mod error;
pub mod picard;
pub mod reproduce;
pub mod schubert;
pub mod symplectic;

pub use error::{Error, Result};
