//! Exact Floquet characteristic polynomials of discrete periodic Schrödinger
//! operators, determinants as sums over disjoint cycle covers, and checks of
//! Floquet isospectrality to the zero potential.
//!
//! - [`exact`]: Gaussian integers and sparse multivariate polynomials over them.
//! - [`cover`]: digraphs of matrices, cycle-cover enumeration, Jacobi digraphs.
//! - [`floquet`]: Floquet matrices, characteristic polynomials, the four-slot
//!   potential and its coefficient formulas, separable potentials.
//! - [`search`]: the isospectrality equations of a period, Macaulay2 export and
//!   palette search.

pub mod cover;
pub mod exact;
pub mod floquet;
pub mod search;

pub use exact::{ComplexF, GaussInt, Monomial, MultiPoly, SquareMatrix, VarId};

// The guide's code samples run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/cycle-covers.md")]
    mod cycle_covers {}
    #[doc = include_str!("../../../book/src/floquet.md")]
    mod floquet {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/separable.md")]
    mod separable {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
