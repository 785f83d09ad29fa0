//! Exact spectral analysis of linear relations and regular matrix pencils.
//!
//! Everything runs over the Gaussian rationals `Q(i)` with arbitrary
//! precision, so subspace equality and dimension counts are exact.
//!
//! * [`linalg`]: scalars, matrices, canonical subspaces, pencil determinants
//!   and root finding.
//! * [`relation`]: linear relations in `F^m x F^n`, root subspaces and Weyr
//!   characteristics.
//! * [`pencil`]: regular pencils `x E - A`, their kernel and range
//!   representations and Jordan-chain root subspaces.
//! * [`perturb`]: rank-one pencil perturbations and the randomized
//!   verification suites.

mod error;
pub mod io;
pub mod linalg;
pub mod pencil;
pub mod perturb;
pub mod random;
pub mod relation;

pub use error::{Error, Result};
pub use linalg::{GaussianRational, Matrix, Polynomial, Subspace};
pub use pencil::{CanonicalSpec, OperatorPencil, SpectrumReport};
pub use perturb::{PerturbationSpec, TrialResult, VerificationReport};
pub use relation::{ExtendedScalar, LinearRelation, WeyrTable};
