use std::f64::consts::TAU;

use super::{FloquetError, Potential1D, Quasimomentum, SeparablePotential};
use crate::exact::{ComplexF, MultiPoly, SquareMatrix};

/// Largest cell size for which the full `Q × Q` matrix is materialised.
pub const DIRECT_MAX_DIM: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Polynomial entries; only `k = 0` is representable.
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FloquetMatrix {
    Exact(SquareMatrix<MultiPoly>),
    Numeric(SquareMatrix<ComplexF>),
}

/// Adds one nearest-neighbour hop per direction from every site. The hop
/// leaving the cell through the right edge picks up `forward`, the one through
/// the left edge `backward`; coinciding hops (`q = 2`) add up.
fn accumulate_hops<T: Clone>(
    diag: &[T],
    zero: T,
    one: T,
    forward: T,
    backward: T,
    add: impl Fn(&T, &T) -> T,
) -> SquareMatrix<T> {
    let q = diag.len();
    let mut m = SquareMatrix::from_fn(q, |i, j| if i == j { diag[i].clone() } else { zero.clone() });
    for i in 0..q {
        let (right, right_w) = if i + 1 == q { (0, &forward) } else { (i + 1, &one) };
        m[(i, right)] = add(&m[(i, right)], right_w);
        let (left, left_w) = if i == 0 { (q - 1, &backward) } else { (i - 1, &one) };
        m[(i, left)] = add(&m[(i, left)], left_w);
    }
    m
}

/// The `k = 0` Floquet matrix with an arbitrary (possibly symbolic) diagonal:
/// ones on the off-diagonals and in both corners.
pub fn periodic_jacobi_symbolic(diag: &[MultiPoly]) -> Result<SquareMatrix<MultiPoly>, FloquetError> {
    if diag.len() < 2 {
        return Err(FloquetError::PeriodTooSmall(diag.len()));
    }
    Ok(accumulate_hops(
        diag,
        MultiPoly::zero(),
        MultiPoly::one(),
        MultiPoly::one(),
        MultiPoly::one(),
        |a, b| a + b,
    ))
}

/// Floquet matrix at quasimomentum `k`: corner `(1, q)` carries `e^{-2πik}`
/// and corner `(q, 1)` carries `e^{+2πik}`.
pub fn floquet_matrix_numeric(values: &[ComplexF], k: f64) -> Result<SquareMatrix<ComplexF>, FloquetError> {
    if values.len() < 2 {
        return Err(FloquetError::PeriodTooSmall(values.len()));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(FloquetError::QuasimomentumOutOfRange(k));
    }
    let phase = ComplexF::from_polar(1.0, TAU * k);
    Ok(accumulate_hops(
        values,
        ComplexF::new(0.0, 0.0),
        ComplexF::new(1.0, 0.0),
        phase,
        phase.conj(),
        |a, b| a + b,
    ))
}

/// The one-dimensional Floquet matrix of `v` at quasimomentum `k`.
pub fn build_floquet_1d(v: &Potential1D, k: f64, mode: Mode) -> Result<FloquetMatrix, FloquetError> {
    match mode {
        Mode::Exact => {
            if k != 0.0 {
                return Err(FloquetError::ExactModeNeedsKZero(k));
            }
            let diag = v.diagonal_exact().ok_or(FloquetError::NotExact)?;
            periodic_jacobi_symbolic(&diag).map(FloquetMatrix::Exact)
        }
        Mode::Numeric => floquet_matrix_numeric(&v.complex_values(), k).map(FloquetMatrix::Numeric),
    }
}

/// The full `Q × Q` Floquet matrix of a separable potential: the Kronecker sum
/// of the axis matrices, with the last axis varying fastest in the index.
pub fn floquet_matrix_nd(v: &SeparablePotential, k: &Quasimomentum) -> Result<SquareMatrix<ComplexF>, FloquetError> {
    if k.dim() != v.dim() {
        return Err(FloquetError::DimensionMismatch {
            axes: v.dim(),
            k: k.dim(),
        });
    }
    let q = v.cell_size();
    if q > DIRECT_MAX_DIM {
        return Err(FloquetError::DimensionTooLarge {
            n: q,
            max: DIRECT_MAX_DIM,
        });
    }
    let axes = v
        .axes()
        .iter()
        .zip(k.components())
        .map(|(a, &kj)| floquet_matrix_numeric(&a.complex_values(), kj))
        .collect::<Result<Vec<_>, _>>()?;
    let periods = v.periods();
    // stride of axis j in the flattened index
    let mut strides = vec![1; periods.len()];
    for j in (0..periods.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * periods[j + 1];
    }
    let mut out = SquareMatrix::from_fn(q, |_, _| ComplexF::new(0.0, 0.0));
    for row in 0..q {
        for (j, axis) in axes.iter().enumerate() {
            let digit = (row / strides[j]) % periods[j];
            for c in 0..periods[j] {
                let entry = axis[(digit, c)];
                if entry == ComplexF::new(0.0, 0.0) {
                    continue;
                }
                let col = row - digit * strides[j] + c * strides[j];
                out[(row, col)] += entry;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussInt;
    use crate::floquet::four_slot_potential;

    fn c(re: f64, im: f64) -> ComplexF {
        ComplexF::new(re, im)
    }

    fn ints(m: &SquareMatrix<MultiPoly>) -> Vec<Vec<String>> {
        (0..m.dim())
            .map(|i| m.row(i).iter().map(|e| e.to_string()).collect())
            .collect()
    }

    #[test]
    fn four_by_four_matrices() {
        let FloquetMatrix::Exact(dv) = build_floquet_1d(&four_slot_potential(2).unwrap(), 0.0, Mode::Exact).unwrap()
        else {
            panic!("exact mode yields exact matrix");
        };
        let one = "(1+0i)".to_string();
        let zero = "0".to_string();
        let want = vec![
            vec!["(1+1i)".to_string(), one.clone(), zero.clone(), one.clone()],
            vec![one.clone(), "(1-1i)".to_string(), one.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), "(-1+1i)".to_string(), one.clone()],
            vec![one.clone(), zero.clone(), one.clone(), "(-1-1i)".to_string()],
        ];
        assert_eq!(ints(&dv), want);

        let FloquetMatrix::Exact(d0) = build_floquet_1d(&Potential1D::zero(4).unwrap(), 0.0, Mode::Exact).unwrap()
        else {
            panic!("exact mode yields exact matrix");
        };
        for i in 0..4 {
            for j in 0..4 {
                let adjacent = (i + 1) % 4 == j || (j + 1) % 4 == i;
                assert_eq!(d0[(i, j)], MultiPoly::constant(adjacent as i64));
            }
        }
    }

    #[test]
    fn half_period_phase() {
        let m = floquet_matrix_numeric(&[c(0.0, 0.0); 4], 0.5).unwrap();
        assert!((m[(0, 3)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((m[(3, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(2, 1)], c(1.0, 0.0));
        assert_eq!(m[(0, 2)], c(0.0, 0.0));
    }

    #[test]
    fn corner_phases() {
        let k = 0.2;
        let m = floquet_matrix_numeric(&[c(0.0, 0.0); 5], k).unwrap();
        let e = ComplexF::from_polar(1.0, TAU * k);
        assert!((m[(0, 4)] - e.conj()).norm() < 1e-15);
        assert!((m[(4, 0)] - e).norm() < 1e-15);
    }

    #[test]
    fn period_two_accumulates() {
        let k = 0.3;
        let m = floquet_matrix_numeric(&[c(2.0, 0.0), c(0.0, 1.0)], k).unwrap();
        let e = ComplexF::from_polar(1.0, TAU * k);
        assert!((m[(0, 1)] - (c(1.0, 0.0) + e.conj())).norm() < 1e-15);
        assert!((m[(1, 0)] - (c(1.0, 0.0) + e)).norm() < 1e-15);
        assert_eq!(m[(0, 0)], c(2.0, 0.0));
        let exact = periodic_jacobi_symbolic(&[MultiPoly::zero(), MultiPoly::zero()]).unwrap();
        assert_eq!(exact[(0, 1)], MultiPoly::constant(2));
    }

    #[test]
    fn errors() {
        let v = Potential1D::zero(4).unwrap();
        assert_eq!(
            build_floquet_1d(&v, 0.25, Mode::Exact),
            Err(FloquetError::ExactModeNeedsKZero(0.25))
        );
        let one = Potential1D::exact(vec![GaussInt::from(3)]).unwrap();
        assert_eq!(
            build_floquet_1d(&one, 0.0, Mode::Numeric),
            Err(FloquetError::PeriodTooSmall(1))
        );
        let numeric = Potential1D::numeric(vec![c(1.0, 0.0); 3]).unwrap();
        assert_eq!(
            build_floquet_1d(&numeric, 0.0, Mode::Exact),
            Err(FloquetError::NotExact)
        );
    }

    #[test]
    fn kronecker_sum_layout() {
        let v = SeparablePotential::new(vec![
            Potential1D::exact(vec![GaussInt::from(1), GaussInt::from(2)]).unwrap(),
            Potential1D::exact(vec![GaussInt::from(10), GaussInt::from(20), GaussInt::from(30)]).unwrap(),
        ])
        .unwrap();
        let m = floquet_matrix_nd(&v, &Quasimomentum::zero(2)).unwrap();
        assert_eq!(m.dim(), 6);
        // site (n1, n2) = (1, 2) has index 1*3 + 2
        assert_eq!(m[(5, 5)], c(32.0, 0.0));
        // axis-1 hop, q1 = 2 accumulates to 2
        assert_eq!(m[(0, 3)], c(2.0, 0.0));
        // axis-2 hops
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(0, 2)], c(1.0, 0.0));
        assert_eq!(m[(0, 4)], c(0.0, 0.0));
    }
}
