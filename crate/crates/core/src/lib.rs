//! Exact computations for the quaternion group Q8 and the binary tetrahedral
//! group G24 over F4: modular representation theory, group cohomology,
//! truncated 2-adic quaternion arithmetic, and skew Hecke algebras.

pub mod cohom;
pub mod error;
pub mod ffield;
pub mod gmod;
pub mod groups;
pub mod hecke;
pub mod linalg;
pub mod morava;
pub mod verify;

pub use error::{Error, Result};
pub use ffield::{FieldElement, FiniteField};
pub use gmod::GModule;
pub use groups::{FiniteGroup, Subgroup};
pub use linalg::Matrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
