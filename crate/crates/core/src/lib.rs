//! Exact null cones of the orthogonal, symplectic and general linear actions
//! on matrix spaces, their resolutions of singularities, and the quotient maps
//! onto closures of two-column nilpotent classes.
//!
//! Everything is computed over the Gaussian rationals `Q(i)`, so every check
//! in this crate is an exact equality.

pub mod error;
pub mod forms;
pub mod isotropic;
pub mod matrix;
pub mod nullcone;
pub mod random;
pub mod resolutions;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use forms::{adjoint, BilinearForm, DetSign, FormKind, FormedSpace};
pub use matrix::ExactMatrix;
pub use scalar::GaussianRational;
pub use subspace::Subspace;
