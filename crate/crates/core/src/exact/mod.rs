//! Exact arithmetic over the Gaussian integers: scalars, sparse multivariate
//! polynomials and small dense matrices.

mod gauss;
mod matrix;
mod poly;

pub use gauss::{GaussInt, ParseGaussIntError};
pub use matrix::{MatrixError, SquareMatrix};
pub use poly::{Monomial, MultiPoly, PolyError, VarId};

/// Double-precision complex scalar used on the numeric paths.
pub type ComplexF = num_complex::Complex64;
