//! Exact linear algebra over the Gaussian rationals.

mod matrix;
mod polynomial;
pub mod rational;
mod roots;
mod scalar;
mod subspace;

pub use matrix::{rref, Matrix, RowEchelon};
pub use polynomial::{minor_gcd_poly, pencil_det_poly, Polynomial};
pub use rational::Rational;
pub use roots::{gaussian_rational_roots, RootFactorization};
pub use scalar::{parse_vector, GaussianRational};
pub use subspace::{column_space, map_image, map_preimage, null_space, quotient_dim, Subspace};
