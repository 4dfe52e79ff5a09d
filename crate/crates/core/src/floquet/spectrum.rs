use std::f64::consts::TAU;

use super::{charpoly_numeric, floquet_matrix_numeric, CharPoly, FloquetError, Quasimomentum, SeparablePotential};
use crate::exact::ComplexF;

/// Largest axis period for per-axis root finding.
pub const AXIS_MAX_PERIOD: usize = 64;
/// Largest cell size for which the full spectrum multiset is formed.
pub const SPECTRUM_MAX_SIZE: usize = 4096;

fn check_shape(v: &SeparablePotential, k: &Quasimomentum) -> Result<(), FloquetError> {
    if k.dim() != v.dim() {
        return Err(FloquetError::DimensionMismatch {
            axes: v.dim(),
            k: k.dim(),
        });
    }
    for (axis, q) in v.periods().into_iter().enumerate() {
        if q > AXIS_MAX_PERIOD {
            return Err(FloquetError::AxisTooLarge {
                axis,
                period: q,
                max: AXIS_MAX_PERIOD,
            });
        }
    }
    Ok(())
}

fn axis_charpolys(v: &SeparablePotential, k: &Quasimomentum) -> Result<Vec<CharPoly<ComplexF>>, FloquetError> {
    v.axes()
        .iter()
        .zip(k.components())
        .map(|(a, &kj)| charpoly_numeric(&floquet_matrix_numeric(&a.complex_values(), kj)?))
        .collect()
}

fn minkowski_sum(sets: &[Vec<ComplexF>]) -> Vec<ComplexF> {
    sets.iter().fold(vec![ComplexF::new(0.0, 0.0)], |acc, set| {
        acc.iter().flat_map(|&s| set.iter().map(move |&x| s + x)).collect()
    })
}

/// Floquet spectrum of a separable potential at `k`, with multiplicity: all
/// sums `λ_1 + … + λ_d` of axis eigenvalues. Axis eigenvalues are the roots
/// of the axis characteristic polynomials; the first axis varies slowest.
pub fn spectrum_separable(v: &SeparablePotential, k: &Quasimomentum) -> Result<Vec<ComplexF>, FloquetError> {
    check_shape(v, k)?;
    let size = v.cell_size();
    if size > SPECTRUM_MAX_SIZE {
        return Err(FloquetError::SpectrumTooLarge {
            size,
            max: SPECTRUM_MAX_SIZE,
        });
    }
    let roots: Vec<Vec<ComplexF>> = axis_charpolys(v, k)?.iter().map(CharPoly::roots).collect();
    Ok(minkowski_sum(&roots))
}

/// `ln det(λI − D_V(k))` for a separable potential.
///
/// One axis (the one with the largest period) enters through its
/// characteristic polynomial; the others through their eigenvalues:
/// `det(λI − A ⊕ B) = ∏_{μ ∈ σ(B)} det((λ − μ)I − A)`. The product is a
/// symmetric function of the eigenvalues of `B`, so clustered roots do not
/// spoil it.
fn log_det_separable(polys: &[CharPoly<ComplexF>], periods: &[usize], lambdas: &[ComplexF]) -> Vec<ComplexF> {
    let main = (0..periods.len())
        .max_by_key(|&j| (periods[j], std::cmp::Reverse(j)))
        .expect("at least one axis");
    let others: Vec<Vec<ComplexF>> = polys
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != main)
        .map(|(_, p)| p.roots())
        .collect();
    let shifts = minkowski_sum(&others);
    // det(μI − A) = (−1)^q det(A − μI)
    let flip = if periods[main].is_multiple_of(2) { 1.0 } else { -1.0 };
    lambdas
        .iter()
        .map(|&lam| shifts.iter().map(|&s| (polys[main].eval(lam - s) * flip).ln()).sum())
        .collect()
}

/// The sample points `R e^{2πij/(Q+1)}`, `j = 0..=Q`.
pub fn sample_points(q: usize, radius: f64) -> Vec<ComplexF> {
    (0..=q)
        .map(|j| ComplexF::from_polar(radius, TAU * j as f64 / (q + 1) as f64))
        .collect()
}

/// Gershgorin radius `2d + Σ_j max|V_j| + 1` covering both potentials.
pub fn sample_radius(v: &SeparablePotential, w: &SeparablePotential) -> f64 {
    let bound = |p: &SeparablePotential| p.axes().iter().map(|a| a.max_abs()).sum::<f64>();
    2.0 * v.dim() as f64 + bound(v).max(bound(w)) + 1.0
}

/// Largest relative difference between `det(λI − D_V(k))` and
/// `det(λI − D_W(k))` over the `Q + 1` sample points.
pub fn isospectral_deviation(
    v: &SeparablePotential,
    w: &SeparablePotential,
    k: &Quasimomentum,
) -> Result<f64, FloquetError> {
    if v.periods() != w.periods() {
        return Err(FloquetError::LatticeMismatch {
            left: v.periods(),
            right: w.periods(),
        });
    }
    check_shape(v, k)?;
    let periods = v.periods();
    let lambdas = sample_points(v.cell_size(), sample_radius(v, w));
    let lv = log_det_separable(&axis_charpolys(v, k)?, &periods, &lambdas);
    let lw = log_det_separable(&axis_charpolys(w, k)?, &periods, &lambdas);
    Ok(lv
        .iter()
        .zip(&lw)
        .map(|(a, b)| {
            // |dV − dW| / max(|dV|, |dW|)
            let r = (a - b).exp();
            let rel = (r - 1.0).norm();
            if r.norm() > 1.0 {
                rel / r.norm()
            } else {
                rel
            }
        })
        .fold(0.0, f64::max))
}

/// Whether `V` and `W` have the same Floquet spectrum at `k`, judged by the
/// determinant comparison of [`isospectral_deviation`] against `tol`.
pub fn isospectral_numeric(
    v: &SeparablePotential,
    w: &SeparablePotential,
    k: &Quasimomentum,
    tol: f64,
) -> Result<bool, FloquetError> {
    Ok(isospectral_deviation(v, w, k)? <= tol)
}

/// `det(λI − D_V(k))` from the materialised `Q × Q` matrix; `Q ≤ 256`.
pub fn det_direct(v: &SeparablePotential, k: &Quasimomentum, lambda: ComplexF) -> Result<ComplexF, FloquetError> {
    let d = super::floquet_matrix_nd(v, k)?;
    let n = d.dim();
    let shifted = crate::exact::SquareMatrix::from_fn(n, |i, j| if i == j { lambda - d[(i, j)] } else { -d[(i, j)] });
    Ok(super::det_numeric(&shifted))
}

/// `det(λI − D_V(k))` via the separable route, for comparison with
/// [`det_direct`].
pub fn det_separable(v: &SeparablePotential, k: &Quasimomentum, lambda: ComplexF) -> Result<ComplexF, FloquetError> {
    check_shape(v, k)?;
    let ln = log_det_separable(&axis_charpolys(v, k)?, &v.periods(), &[lambda]);
    Ok(ln[0].exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussInt;
    use crate::floquet::{four_slot_potential, Potential1D};

    fn close_multiset(a: &[ComplexF], b: &[ComplexF], tol: f64) -> bool {
        let mut left: Vec<ComplexF> = b.to_vec();
        a.len() == b.len()
            && a.iter().all(|x| {
                let best = left
                    .iter()
                    .enumerate()
                    .min_by(|p, q| (p.1 - x).norm().total_cmp(&(q.1 - x).norm()))
                    .map(|(i, y)| (i, (y - x).norm()));
                match best {
                    Some((i, d)) if d <= tol => {
                        left.swap_remove(i);
                        true
                    }
                    _ => false,
                }
            })
    }

    fn reals(xs: &[f64]) -> Vec<ComplexF> {
        xs.iter().map(|&x| ComplexF::new(x, 0.0)).collect()
    }

    #[test]
    fn one_axis_zero_potential() {
        let v = SeparablePotential::zero(&[4]).unwrap();
        let s = spectrum_separable(&v, &Quasimomentum::zero(1)).unwrap();
        assert!(close_multiset(&s, &reals(&[2.0, 0.0, 0.0, -2.0]), 1e-6));
    }

    #[test]
    fn two_axes_minkowski() {
        let v = SeparablePotential::zero(&[4, 3]).unwrap();
        let s = spectrum_separable(&v, &Quasimomentum::zero(2)).unwrap();
        // q = 3 at k = 0: 2cos(2πj/3) = {2, −1, −1}
        let mut want = Vec::new();
        for a in [2.0, 0.0, 0.0, -2.0] {
            for b in [2.0, -1.0, -1.0] {
                want.push(a + b);
            }
        }
        assert_eq!(s.len(), 12);
        assert!(close_multiset(&s, &reals(&want), 1e-6));
    }

    #[test]
    fn four_slot_spectrum_is_free() {
        let v = SeparablePotential::new(vec![four_slot_potential(2).unwrap(), Potential1D::zero(3).unwrap()]).unwrap();
        let z = SeparablePotential::zero(&[4, 3]).unwrap();
        for k in [[0.0, 0.0], [0.3, 0.7], [0.5, 0.1], [0.9, 1.0]] {
            let k = Quasimomentum::new(k.to_vec()).unwrap();
            let a = spectrum_separable(&v, &k).unwrap();
            let b = spectrum_separable(&z, &k).unwrap();
            assert!(close_multiset(&a, &b, 1e-6));
        }
    }

    #[test]
    fn identical_potentials() {
        let v = SeparablePotential::new(vec![Potential1D::exact(vec![
            GaussInt::new(2, -1),
            GaussInt::from(0),
            GaussInt::from(5),
        ])
        .unwrap()])
        .unwrap();
        let k = Quasimomentum::new(vec![0.37]).unwrap();
        assert!(isospectral_numeric(&v, &v, &k, 0.0).unwrap());
    }

    #[test]
    fn trace_mismatch_detected() {
        let v = SeparablePotential::new(vec![
            Potential1D::exact(vec![1.into(), 0.into(), 0.into(), 0.into()]).unwrap()
        ])
        .unwrap();
        let z = SeparablePotential::zero(&[4]).unwrap();
        assert!(!isospectral_numeric(&v, &z, &Quasimomentum::zero(1), 1e-9).unwrap());
    }

    #[test]
    fn separable_matches_direct_determinant() {
        let v = SeparablePotential::new(vec![
            four_slot_potential(2).unwrap(),
            Potential1D::exact(vec![GaussInt::new(0, 1), 3.into(), GaussInt::new(-1, 0)]).unwrap(),
        ])
        .unwrap();
        let k = Quasimomentum::new(vec![0.2, 0.65]).unwrap();
        for lam in sample_points(12, 9.0) {
            let a = det_direct(&v, &k, lam).unwrap();
            let b = det_separable(&v, &k, lam).unwrap();
            assert!((a - b).norm() <= 1e-9 * a.norm(), "{a} vs {b}");
        }
    }

    #[test]
    fn shape_errors() {
        let v = SeparablePotential::zero(&[4]).unwrap();
        let w = SeparablePotential::zero(&[6]).unwrap();
        let k = Quasimomentum::zero(1);
        assert!(matches!(
            isospectral_numeric(&v, &w, &k, 1e-9),
            Err(FloquetError::LatticeMismatch { .. })
        ));
        assert!(matches!(
            spectrum_separable(&v, &Quasimomentum::zero(2)),
            Err(FloquetError::DimensionMismatch { .. })
        ));
        let big = SeparablePotential::zero(&[65]).unwrap();
        assert!(matches!(
            spectrum_separable(&big, &k),
            Err(FloquetError::AxisTooLarge {
                axis: 0,
                period: 65,
                ..
            })
        ));
        let huge = SeparablePotential::zero(&[64, 65]).unwrap();
        assert!(matches!(
            spectrum_separable(&huge, &Quasimomentum::zero(2)),
            Err(FloquetError::AxisTooLarge { axis: 1, .. })
        ));
        let wide = SeparablePotential::zero(&[64, 64, 2]).unwrap();
        assert!(matches!(
            spectrum_separable(&wide, &Quasimomentum::zero(3)),
            Err(FloquetError::SpectrumTooLarge { size: 8192, .. })
        ));
    }
}
