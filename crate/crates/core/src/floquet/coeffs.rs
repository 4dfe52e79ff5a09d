//! The coefficients `F_i = [λ^i](P_v − P_0)` for the four-slot pattern, their
//! closed forms in terms of `S(m, p)`, and the counting identity that makes
//! them vanish at the isospectral point.

use super::{charpoly_exact, four_slot_potential, periodic_jacobi_symbolic, CharPoly, FloquetError, PotentialPattern};
use crate::cover::{
    enumerate_covers, gauss_from_count, jacobi_unit, s_closed, s_count, s_signed, CoverFilter, EdgeKey,
};
use crate::exact::{GaussInt, MultiPoly};

/// `v_1 + v_2 + v_3 + v_4`.
pub fn slot_sum() -> MultiPoly {
    (1..=4).map(MultiPoly::v).fold(MultiPoly::zero(), |a, b| a + b)
}

/// Sum of the four triple products of `v_1..v_4`.
pub fn slot_triples() -> MultiPoly {
    let all = [1, 2, 3, 4];
    all.iter().fold(MultiPoly::zero(), |acc, &skip| {
        let t = all
            .iter()
            .filter(|&&i| i != skip)
            .fold(MultiPoly::one(), |p, &i| p * MultiPoly::v(i));
        acc + t
    })
}

/// `v_1 v_2 v_3 v_4`.
pub fn slot_product() -> MultiPoly {
    (1..=4).map(MultiPoly::v).fold(MultiPoly::one(), |a, b| a * b)
}

fn pair(a: u32, b: u32, c: u32, d: u32) -> MultiPoly {
    MultiPoly::v(a) * MultiPoly::v(b) + MultiPoly::v(c) * MultiPoly::v(d)
}

/// `v_1 v_2 + v_3 v_4`.
pub fn pairs_adjacent() -> MultiPoly {
    pair(1, 2, 3, 4)
}

/// `v_1 v_3 + v_2 v_4`.
pub fn pairs_aligned() -> MultiPoly {
    pair(1, 3, 2, 4)
}

/// `v_1 v_4 + v_2 v_3`.
pub fn pairs_crossed() -> MultiPoly {
    pair(1, 4, 2, 3)
}

/// `F_0, …, F_{2m−1}` computed from the two exact characteristic polynomials.
pub fn f_coeff_symbolic(m: usize) -> Result<Vec<MultiPoly>, FloquetError> {
    let pattern = PotentialPattern::new(m)?;
    let pv = charpoly_exact(&periodic_jacobi_symbolic(&pattern.diagonal())?);
    let p0 = charpoly_exact(&periodic_jacobi_symbolic(&vec![MultiPoly::zero(); 2 * m])?);
    let mut diff = pv.sub(&p0);
    let top = diff.pop().expect("2m + 1 coefficients");
    assert!(top.is_zero(), "leading coefficients always agree");
    Ok(diff)
}

/// The `k` for which [`f_closed_form`] is defined: `k = 2ℓ` and `k = 2ℓ+1`
/// with `1 ≤ ℓ ≤ m−1`, i.e. `2 ≤ k ≤ 2m−1`.
pub fn closed_form_range(m: usize) -> std::ops::RangeInclusive<usize> {
    2..=(2 * m).saturating_sub(1)
}

// Σ_{i=0}^{total} S(a, i) S(b, total − i); empty when total < 0
fn s_convolution(a: i64, b: i64, total: i64) -> u128 {
    (0..=total).map(|i| s_signed(a, i) * s_signed(b, total - i)).sum()
}

fn signed(count: u128, negative: bool) -> GaussInt {
    let c = gauss_from_count(count);
    if negative {
        -c
    } else {
        c
    }
}

/// Closed form of `F_{2m−k}` as a polynomial in `v_1..v_4`.
pub fn f_closed_form(m: usize, k: usize) -> Result<MultiPoly, FloquetError> {
    PotentialPattern::new(m)?;
    if !closed_form_range(m).contains(&k) {
        return Err(FloquetError::KOutOfRange { m, k });
    }
    let (m, l) = (m as i64, (k / 2) as i64);
    // (-1)^ℓ
    let odd_l = l % 2 == 1;
    let out = if k.is_multiple_of(2) {
        slot_product().scale(&signed(s_convolution(m - 2, m - 2, l - 2), odd_l))
            + pairs_adjacent().scale(&signed(s_signed(2 * m - 2, l - 1), !odd_l))
            + pairs_aligned().scale(&signed(s_convolution(m - 1, m - 1, l - 1), !odd_l))
            + pairs_crossed().scale(&signed(s_convolution(m, m - 2, l - 1), !odd_l))
    } else {
        slot_triples().scale(&signed(s_convolution(m - 2, m - 1, l - 1), odd_l))
            + slot_sum().scale(&signed(s_signed(2 * m - 1, l), !odd_l))
    };
    Ok(out)
}

/// Both sides of
/// `S(2m−2, ℓ−1) = Σ_i S(m−2, i) S(m−2, ℓ−2−i) + Σ_i S(m−1, i) S(m−1, ℓ−1−i)`,
/// each computed by enumeration and by the binomial formula, plus the direct
/// split of the covers of `J_{2m−2}` by whether they use the 2-cycle
/// `(m−1 m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: usize,
    pub ell: usize,
    pub lhs_count: u128,
    pub lhs_closed: u128,
    pub rhs_count: u128,
    pub rhs_closed: u128,
    /// Covers of `J_{2m−2}` with `ℓ−1` two-cycles that contain `(m−1 m)`.
    pub with_middle: u128,
    /// Those that do not.
    pub without_middle: u128,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        let l = self.lhs_count;
        l == self.lhs_closed
            && l == self.rhs_count
            && l == self.rhs_closed
            && l == self.with_middle + self.without_middle
    }
}

pub fn identity_check(m: usize, ell: usize) -> Result<IdentityReport, FloquetError> {
    PotentialPattern::new(m)?;
    if ell == 0 {
        return Err(FloquetError::EllOutOfRange(ell));
    }
    let count = |a: i64, b: i64, total: i64, f: fn(usize, usize) -> u128| -> u128 {
        (0..=total)
            .map(|i| {
                let j = total - i;
                if a < 0 || b < 0 {
                    0
                } else {
                    f(a as usize, i as usize) * f(b as usize, j as usize)
                }
            })
            .sum()
    };
    let (mi, li) = (m as i64, ell as i64);
    let rhs = |f: fn(usize, usize) -> u128| count(mi - 2, mi - 2, li - 2, f) + count(mi - 1, mi - 1, li - 1, f);

    let big = jacobi_unit(2 * m - 2);
    let middle = [EdgeKey::new(m - 1, m), EdgeKey::new(m, m - 1)];
    let with = CoverFilter::new(middle, [], Some(ell - 1)).expect("disjoint sets");
    let without = CoverFilter::new([], middle, Some(ell - 1)).expect("disjoint sets");

    Ok(IdentityReport {
        m,
        ell,
        lhs_count: s_count(2 * m - 2, ell - 1),
        lhs_closed: s_closed(2 * m - 2, ell - 1),
        rhs_count: rhs(s_count),
        rhs_closed: rhs(s_closed),
        with_middle: enumerate_covers(&big, &with).count() as u128,
        without_middle: enumerate_covers(&big, &without).count() as u128,
    })
}

/// Outcome of comparing the four-slot potential with the zero potential.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroComparison {
    pub m: usize,
    pub equal: bool,
    pub p_v: CharPoly<MultiPoly>,
    pub p_0: CharPoly<MultiPoly>,
}

/// Exact characteristic polynomials of the `k = 0` Floquet matrices of the
/// four-slot potential and of the zero potential, and whether they agree.
pub fn verify_four_slot(m: usize) -> Result<ZeroComparison, FloquetError> {
    let v = four_slot_potential(m)?;
    let diag = v.diagonal_exact().expect("four-slot potential is exact");
    let p_v = charpoly_exact(&periodic_jacobi_symbolic(&diag)?);
    let p_0 = charpoly_exact(&periodic_jacobi_symbolic(&vec![MultiPoly::zero(); 2 * m])?);
    Ok(ZeroComparison {
        m,
        equal: p_v == p_0,
        p_v,
        p_0,
    })
}
