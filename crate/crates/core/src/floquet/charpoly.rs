use std::cmp::Ordering;

use super::FloquetError;
use crate::cover::{det_by_covers, digraph_of_matrix};
use crate::exact::{ComplexF, MultiPoly, SquareMatrix, VarId};

/// Largest matrix accepted by [`charpoly_numeric`].
pub const NUMERIC_MAX_DIM: usize = 64;

/// `P(λ) = det(D − λI)` as its coefficient list: `coeffs[j] = [λ^j]P`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T> CharPoly<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        CharPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl CharPoly<MultiPoly> {
    /// Reassembles `Σ coeffs[j] λ^j`.
    pub fn to_poly(&self) -> MultiPoly {
        let lam = MultiPoly::lambda();
        let mut acc = MultiPoly::zero();
        let mut power = MultiPoly::one();
        for c in &self.coeffs {
            acc += &(c * &power);
            power = &power * &lam;
        }
        acc
    }

    /// Coefficientwise difference, padded to the longer length.
    pub fn sub(&self, other: &CharPoly<MultiPoly>) -> Vec<MultiPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = MultiPoly::zero();
        (0..n)
            .map(|j| self.coeffs.get(j).unwrap_or(&zero) - other.coeffs.get(j).unwrap_or(&zero))
            .collect()
    }

    /// Floating copy; `None` if some coefficient still has variables.
    pub fn to_numeric(&self) -> Option<CharPoly<ComplexF>> {
        self.coeffs
            .iter()
            .map(|c| c.as_constant().map(|g| g.to_complex()))
            .collect::<Option<Vec<_>>>()
            .map(CharPoly::from_coeffs)
    }
}

impl CharPoly<ComplexF> {
    /// Horner evaluation.
    pub fn eval(&self, lambda: ComplexF) -> ComplexF {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexF::new(0.0, 0.0), |acc, &c| acc * lambda + c)
    }

    /// All roots with multiplicity, sorted by real then imaginary part.
    pub fn roots(&self) -> Vec<ComplexF> {
        aberth_roots(&self.coeffs)
    }

    /// `max_j |a_j − b_j| / max(1, max_j |b_j|)`.
    pub fn relative_distance(&self, other: &CharPoly<ComplexF>) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ComplexF::new(0.0, 0.0);
        let get = |c: &[ComplexF], j: usize| c.get(j).copied().unwrap_or(zero);
        let scale = other.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        (0..n)
            .map(|j| (get(&self.coeffs, j) - get(&other.coeffs, j)).norm())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Exact characteristic polynomial: the cover expansion of the digraph of
/// `M − λI`, collected by powers of `λ`.
pub fn charpoly_exact(m: &SquareMatrix<MultiPoly>) -> CharPoly<MultiPoly> {
    let n = m.dim();
    let lam = MultiPoly::lambda();
    let shifted = SquareMatrix::from_fn(n, |i, j| if i == j { &m[(i, j)] - &lam } else { m[(i, j)].clone() });
    let det = det_by_covers(&digraph_of_matrix(&shifted));
    let mut coeffs = det.coeffs_in(VarId::Lambda);
    coeffs.resize(n + 1, MultiPoly::zero());
    CharPoly { coeffs }
}

/// Floating characteristic polynomial via Householder reduction to upper
/// Hessenberg form followed by the Hessenberg determinant recurrence.
pub fn charpoly_numeric(m: &SquareMatrix<ComplexF>) -> Result<CharPoly<ComplexF>, FloquetError> {
    let n = m.dim();
    if n > NUMERIC_MAX_DIM {
        return Err(FloquetError::DimensionTooLarge {
            n,
            max: NUMERIC_MAX_DIM,
        });
    }
    let h = hessenberg(m);
    let zero = ComplexF::new(0.0, 0.0);
    // p[j] = det(H[..j, ..j] − λI)
    let mut p: Vec<Vec<ComplexF>> = vec![vec![ComplexF::new(1.0, 0.0)]];
    for j in 1..=n {
        let prev = &p[j - 1];
        let mut next = vec![zero; j + 1];
        let d = h[j - 1][j - 1];
        for (deg, &c) in prev.iter().enumerate() {
            next[deg] += d * c;
            next[deg + 1] -= c;
        }
        let mut sub = ComplexF::new(1.0, 0.0);
        for i in (1..j).rev() {
            sub *= h[i][i - 1];
            let sign = if (j - i) % 2 == 0 { 1.0 } else { -1.0 };
            let w = h[i - 1][j - 1] * sub * sign;
            for (deg, &c) in p[i - 1].iter().enumerate() {
                next[deg] += w * c;
            }
        }
        p.push(next);
    }
    Ok(CharPoly {
        coeffs: p.pop().expect("p always has n + 1 entries"),
    })
}

fn hessenberg(m: &SquareMatrix<ComplexF>) -> Vec<Vec<ComplexF>> {
    let n = m.dim();
    let mut a: Vec<Vec<ComplexF>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<ComplexF> = (k + 1..n).map(|i| a[i][k]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ComplexF::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * norm;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        // A ← (I − β v v*) A, one column at a time
        #[allow(clippy::needless_range_loop)]
        for col in 0..n {
            let s: ComplexF = v.iter().enumerate().map(|(r, vr)| vr.conj() * a[k + 1 + r][col]).sum();
            for (r, vr) in v.iter().enumerate() {
                a[k + 1 + r][col] -= vr * s * beta;
            }
        }
        // A ← A (I − β v v*)
        for row in a.iter_mut() {
            let s: ComplexF = v.iter().enumerate().map(|(c, vc)| row[k + 1 + c] * vc).sum();
            for (c, vc) in v.iter().enumerate() {
                row[k + 1 + c] -= s * vc.conj() * beta;
            }
        }
    }
    a
}

/// Determinant by LU factorisation with partial pivoting.
pub fn det_numeric(m: &SquareMatrix<ComplexF>) -> ComplexF {
    let n = m.dim();
    let mut a: Vec<Vec<ComplexF>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = ComplexF::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm()))
            .expect("range is non-empty");
        if a[pivot][k].norm() == 0.0 {
            return ComplexF::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        let d = a[k][k];
        det *= d;
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest {
            let f = row[k] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for (x, &t) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                *x -= f * t;
            }
        }
    }
    det
}

/// Aberth–Ehrlich simultaneous iteration. Roots of multiplicity `r` come out
/// with error around `ε^{1/r}`, but their symmetric functions stay accurate.
fn aberth_roots(coeffs: &[ComplexF]) -> Vec<ComplexF> {
    let Some(deg) = coeffs.iter().rposition(|c| c.norm() != 0.0) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<ComplexF> = coeffs[..=deg].iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<ComplexF> = (0..deg)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / deg as f64 + 0.4;
            ComplexF::from_polar(radius, angle)
        })
        .collect();
    let eval = |x: ComplexF| {
        let mut p = ComplexF::new(0.0, 0.0);
        let mut dp = ComplexF::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut biggest: f64 = 0.0;
        let current = z.clone();
        for k in 0..deg {
            let (p, dp) = eval(current[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: ComplexF = (0..deg)
                .filter(|&j| j != k)
                .map(|j| (current[k] - current[j]).inv())
                .sum();
            let w = ratio / (ComplexF::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                continue;
            }
            z[k] = current[k] - w;
            biggest = biggest.max(w.norm() / (1.0 + current[k].norm()));
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z.sort_by(|a, b| match a.re.total_cmp(&b.re) {
        Ordering::Equal => a.im.total_cmp(&b.im),
        o => o,
    });
    z
}
