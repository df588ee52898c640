//! The space `X_{2r}` of symmetric symplectic matrices: equations, sampling,
//! strata, normal forms, tangent cones and secant varieties.

pub mod equations;
pub mod group;
pub mod normal_form;
pub mod secant;
pub mod strata;
pub mod tangent;
pub mod x4;

pub use equations::orbit_equations;
pub use group::{is_symplectic, omega, random_symplectic, SymplecticMat};
pub use normal_form::{normal_form, NormalFormResult, Scalar, Witness};
pub use secant::{secant_deg, secant_dim, secant_mult};
pub use strata::{classify_point, rank_gap_sampling, stratum_dimension, x_dimension, RankGapReport, StratumLabel};
pub use tangent::{tangent_cone, TangentConeReport};
pub use x4::{ruling_check, verify_x4_pluecker, PlueckerReport, RulingReport};
