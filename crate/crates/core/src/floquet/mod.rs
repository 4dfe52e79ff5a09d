//! Floquet matrices of discrete periodic Schrödinger operators `Δ + V` and
//! the comparisons built on them.
//!
//! For a `q`-periodic potential on `Z` and quasimomentum `k`, the boundary
//! condition `u(n + q) = e^{2πik} u(n)` turns the operator into a `q × q`
//! matrix: the potential on the diagonal, ones on the first off-diagonals and
//! the phases `e^{∓2πik}` in the two corners. A separable potential on `Z^d`
//! gives the Kronecker sum of its axis matrices, whose spectrum is the
//! Minkowski sum of the axis spectra.
//!
//! Characteristic polynomials follow `P(λ) = det(D − λI)` throughout.

mod charpoly;
mod coeffs;
mod matrix;
mod potential;
mod spectrum;

pub use charpoly::{charpoly_exact, charpoly_numeric, det_numeric, CharPoly, NUMERIC_MAX_DIM};
pub use coeffs::{
    closed_form_range, f_closed_form, f_coeff_symbolic, identity_check, pairs_adjacent, pairs_aligned, pairs_crossed,
    slot_product, slot_sum, slot_triples, verify_four_slot, IdentityReport, ZeroComparison,
};
pub use matrix::{
    build_floquet_1d, floquet_matrix_nd, floquet_matrix_numeric, periodic_jacobi_symbolic, FloquetMatrix, Mode,
    DIRECT_MAX_DIM,
};
pub use potential::{
    four_slot_potential, Potential1D, PotentialPattern, PotentialValues, Quasimomentum, SeparablePotential,
};
pub use spectrum::{
    det_direct, det_separable, isospectral_deviation, isospectral_numeric, sample_points, sample_radius,
    spectrum_separable, AXIS_MAX_PERIOD, SPECTRUM_MAX_SIZE,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FloquetError {
    #[error("the four-slot pattern needs m >= 2, got m = {0}")]
    MTooSmall(usize),
    #[error("period must be at least 2, got {0}")]
    PeriodTooSmall(usize),
    #[error("exact matrices are only available at k = 0, got k = {0}")]
    ExactModeNeedsKZero(f64),
    #[error("potential has floating values where exact ones are required")]
    NotExact,
    #[error("potential values must be finite")]
    NonFinite,
    #[error("quasimomentum component {0} is outside [0, 1]")]
    QuasimomentumOutOfRange(f64),
    #[error("potential has {axes} axes but the quasimomentum has {k} components")]
    DimensionMismatch { axes: usize, k: usize },
    #[error("matrix dimension {n} exceeds the limit {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("axis {axis} has period {period}, the limit is {max}")]
    AxisTooLarge { axis: usize, period: usize, max: usize },
    #[error("cell size {size} exceeds the spectrum limit {max}")]
    SpectrumTooLarge { size: usize, max: usize },
    #[error("k = {k} is outside the closed-form range 2..={} for m = {m}", 2 * m - 1)]
    KOutOfRange { m: usize, k: usize },
    #[error("ℓ must be at least 1, got {0}")]
    EllOutOfRange(usize),
    #[error("potentials live on different lattices: periods {left:?} vs {right:?}")]
    LatticeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("axis declares period {period} but lists {len} values")]
    LengthMismatch { period: usize, len: usize },
    #[error("potential needs at least one axis")]
    NoAxes,
    #[error("invalid potential file: {0}")]
    InvalidFile(String),
}
