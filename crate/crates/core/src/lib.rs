//! Stable endomorphism algebras of cluster-tilting objects and the
//! periodicity of their bimodule resolutions, computed exactly over F_p.

pub mod algebra;
pub mod error;
pub mod repcat;
pub mod kernel;
pub mod mfcat;
pub mod cluster;
pub mod periodicity;

pub use error::{Error, Result};
pub use kernel::{FieldElement, Matrix, Poly2, PrimeField};
