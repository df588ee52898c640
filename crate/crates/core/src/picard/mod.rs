//! Picard groups, cones of divisors and their chamber decompositions.

pub mod cone;
pub mod divisor;
pub mod gkz;
pub mod models;

pub use cone::ConeQ;
pub use divisor::{ledger_k, ledger_s, Basis, DivClass, Ledger, LedgerEntry};
pub use gkz::{gkz_decomposition, Chamber, ChamberFan, FanReport};
pub use models::{cones_of_models, fano_threshold, fano_type, FanoType, ModelCones, Space, WallLabel};
