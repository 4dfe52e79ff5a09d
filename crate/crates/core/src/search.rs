//! The isospectrality equations for a general period, export of those
//! equations to Macaulay2, and a brute-force search for exact solutions over a
//! finite palette of Gaussian integers.
//!
//! For period `q` the unknowns are `v_1..v_q` and the equations are
//! `F_j = [λ^j](det(D_v − λI) − det(D_0 − λI)) = 0` for `j = 0..q−1`, where
//! `D_v` is the `k = 0` Floquet matrix. `F_j` has degree at most `q − j` in
//! the `v`s; `F_{q−1} = ±(v_1 + … + v_q)` is the trace condition.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{GaussInt, Monomial, MultiPoly, VarId};
use crate::floquet::{charpoly_exact, periodic_jacobi_symbolic, FloquetError, Potential1D};

/// Most slots [`scan_candidates`] will vary at once.
pub const SCAN_MAX_SLOTS: usize = 6;
/// Most assignments [`scan_candidates`] will visit.
pub const SCAN_MAX_ASSIGNMENTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("the equation system needs period at least 3, got {0}")]
    PeriodTooSmall(usize),
    #[error("slot {slot} is outside 1..={q}")]
    SlotOutOfRange { slot: usize, q: usize },
    #[error("slot {0} is listed twice")]
    DuplicateSlot(usize),
    #[error("at most {max} slots can be scanned, got {n}")]
    TooManySlots { n: usize, max: usize },
    #[error("{size} assignments exceed the scan limit of {max}")]
    SearchSpaceTooLarge { size: u128, max: u64 },
    #[error("equation mentions {0}, which is not a declared variable")]
    UndeclaredVariable(VarId),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
}

/// Polynomial equations `equations[j] = 0` in the listed variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    variables: Vec<VarId>,
    equations: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(variables: Vec<VarId>, equations: Vec<MultiPoly>) -> Result<Self, SearchError> {
        for eq in &equations {
            if let Some(&bad) = eq.variables().iter().find(|v| !variables.contains(v)) {
                return Err(SearchError::UndeclaredVariable(bad));
            }
        }
        Ok(PolySystem { variables, equations })
    }

    pub fn variables(&self) -> &[VarId] {
        &self.variables
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }
}

// F_0..F_{q−1} with v_s symbolic at the listed slots and 0 elsewhere
fn restricted_equations(q: usize, slots: &[usize]) -> Result<Vec<MultiPoly>, FloquetError> {
    let diag: Vec<MultiPoly> = (1..=q)
        .map(|i| {
            if slots.contains(&i) {
                MultiPoly::v(i as u32)
            } else {
                MultiPoly::zero()
            }
        })
        .collect();
    let pv = charpoly_exact(&periodic_jacobi_symbolic(&diag)?);
    let p0 = charpoly_exact(&periodic_jacobi_symbolic(&vec![MultiPoly::zero(); q])?);
    let mut diff = pv.sub(&p0);
    let top = diff.pop().expect("q + 1 coefficients");
    debug_assert!(top.is_zero());
    Ok(diff)
}

/// The isospectrality system of period `q ≥ 3` in the unknowns `v_1..v_q`;
/// `equations()[j]` is `F_j`.
pub fn isospectral_system(q: usize) -> Result<PolySystem, SearchError> {
    if q < 3 {
        return Err(SearchError::PeriodTooSmall(q));
    }
    let slots: Vec<usize> = (1..=q).collect();
    let equations = restricted_equations(q, &slots)?;
    PolySystem::new((1..=q as u32).map(VarId::v).collect(), equations)
}

fn m2_var(v: VarId) -> String {
    match v {
        VarId::Lambda => "l".to_string(),
        VarId::V(i) => format!("v{i}"),
    }
}

fn m2_monomial(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|&(v, e)| match e {
            1 => m2_var(v),
            _ => format!("{}^{e}", m2_var(v)),
        })
        .collect::<Vec<_>>()
        .join("*")
}

// `a`, `b*ii` or `(a+b*ii)`, followed by `*monomial` unless the monomial is 1.
// The sign of a purely real or imaginary coefficient is pulled out front.
fn m2_term(c: &GaussInt, m: &Monomial) -> (bool, String) {
    let (negative, body) = if c.im.is_zero() {
        (c.re.sign() == num_bigint::Sign::Minus, c.re.magnitude().to_string())
    } else if c.re.is_zero() {
        let mag = c.im.magnitude();
        let body = if mag.is_one() {
            "ii".to_string()
        } else {
            format!("{mag}*ii")
        };
        (c.im.sign() == num_bigint::Sign::Minus, body)
    } else {
        let sign = if c.im.sign() == num_bigint::Sign::Minus {
            '-'
        } else {
            '+'
        };
        (false, format!("({}{sign}{}*ii)", c.re, c.im.magnitude()))
    };
    let text = if m.is_one() {
        body
    } else if body == "1" {
        m2_monomial(m)
    } else {
        format!("{body}*{}", m2_monomial(m))
    };
    (negative, text)
}

/// One polynomial in Macaulay2 syntax over `QQ[ii]/(ii^2+1)`, largest
/// monomial first.
pub fn poly_to_macaulay2(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let (negative, text) = m2_term(c, m);
        match (idx, negative) {
            (0, false) => out.push_str(&text),
            (0, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (_, false) => write!(out, " + {text}").unwrap(),
            (_, true) => write!(out, " - {text}").unwrap(),
        }
    }
    out
}

/// A Macaulay2 script that declares the coefficient field `Q(i)`, the ring of
/// the system's variables and the ideal of its equations, then asks for its
/// dimension, degree and primary decomposition. The output depends only on
/// the system, so it is stable byte for byte.
pub fn to_macaulay2(system: &PolySystem) -> String {
    let mut out = String::new();
    out.push_str("-- isospectrality equations: F_j = [l^j](det(D_v - l*I) - det(D_0 - l*I))\n");
    writeln!(
        out,
        "-- {} equations in {} unknowns",
        system.equations.len(),
        system.variables.len()
    )
    .unwrap();
    out.push_str("K = toField(QQ[ii]/(ii^2+1));\n");
    let vars: Vec<String> = system.variables.iter().map(|&v| m2_var(v)).collect();
    writeln!(out, "R = K[{}];", vars.join(",")).unwrap();
    if system.equations.is_empty() {
        return out;
    }
    out.push_str("F = {\n");
    let n = system.equations.len();
    for (j, eq) in system.equations.iter().enumerate() {
        let sep = if j + 1 < n { "," } else { "" };
        writeln!(out, "  {}{sep} -- F_{j}", poly_to_macaulay2(eq)).unwrap();
    }
    out.push_str("};\n");
    out.push_str("I = ideal F;\n");
    out.push_str("dim I\n");
    out.push_str("degree I\n");
    out.push_str("decompose I\n");
    out
}

/// The residuals `F_j(v)` of a concrete potential, and whether they all vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateReport {
    pub candidate: Potential1D,
    /// `F_j(v)` for every `j` in `0..q`.
    pub residuals: BTreeMap<usize, GaussInt>,
    pub isospectral: bool,
}

/// Compares the exact `k = 0` characteristic polynomials of `v` and of the zero
/// potential of the same period.
pub fn verify_candidate(v: &Potential1D) -> Result<CandidateReport, SearchError> {
    let diag = v.diagonal_exact().ok_or(FloquetError::NotExact)?;
    let q = diag.len();
    let pv = charpoly_exact(&periodic_jacobi_symbolic(&diag)?);
    let p0 = charpoly_exact(&periodic_jacobi_symbolic(&vec![MultiPoly::zero(); q])?);
    let residuals: BTreeMap<usize, GaussInt> = pv
        .sub(&p0)
        .into_iter()
        .take(q)
        .enumerate()
        .map(|(j, p)| (j, p.as_constant().expect("concrete potential")))
        .collect();
    let isospectral = residuals.values().all(Zero::is_zero);
    Ok(CandidateReport {
        candidate: v.clone(),
        residuals,
        isospectral,
    })
}

// An equation with its variables replaced by slot positions.
struct Compiled {
    terms: Vec<(GaussInt, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(eq: &MultiPoly, slots: &[usize]) -> Self {
        let terms = eq
            .terms()
            .map(|(m, c)| {
                let factors = m
                    .factors()
                    .iter()
                    .map(|&(var, e)| {
                        let VarId::V(i) = var else {
                            unreachable!("equations do not contain λ")
                        };
                        let pos = slots.iter().position(|&s| s == i as usize).expect("slot variable");
                        (pos, e)
                    })
                    .collect();
                (c.clone(), factors)
            })
            .collect();
        Compiled { terms }
    }

    // powers[p][e] = (value at slot position p)^e
    fn vanishes(&self, powers: &[&[GaussInt]]) -> bool {
        let mut acc = GaussInt::zero();
        for (c, factors) in &self.terms {
            let mut t = c.clone();
            for &(pos, e) in factors {
                t = &t * &powers[pos][e as usize];
            }
            acc += &t;
        }
        acc.is_zero()
    }
}

/// Every assignment of `values` to the given slots (1-based, zeros elsewhere)
/// that solves the period-`q` system exactly, in lexicographic order of palette
/// indices with the first slot most significant. The palette is deduplicated,
/// keeping first occurrences.
pub fn scan_candidates(q: usize, slots: &[usize], values: &[GaussInt]) -> Result<Vec<CandidateReport>, SearchError> {
    if q < 3 {
        return Err(SearchError::PeriodTooSmall(q));
    }
    if slots.len() > SCAN_MAX_SLOTS {
        return Err(SearchError::TooManySlots {
            n: slots.len(),
            max: SCAN_MAX_SLOTS,
        });
    }
    for (idx, &s) in slots.iter().enumerate() {
        if s == 0 || s > q {
            return Err(SearchError::SlotOutOfRange { slot: s, q });
        }
        if slots[..idx].contains(&s) {
            return Err(SearchError::DuplicateSlot(s));
        }
    }
    let mut palette: Vec<GaussInt> = Vec::new();
    for v in values {
        if !palette.contains(v) {
            palette.push(v.clone());
        }
    }
    let size = (palette.len() as u128).pow(slots.len() as u32);
    if size > SCAN_MAX_ASSIGNMENTS as u128 {
        return Err(SearchError::SearchSpaceTooLarge {
            size,
            max: SCAN_MAX_ASSIGNMENTS,
        });
    }

    // highest j first: the trace equation is linear and rejects most points
    let equations: Vec<Compiled> = restricted_equations(q, slots)?
        .iter()
        .rev()
        .map(|eq| Compiled::new(eq, slots))
        .collect();
    let powers: Vec<Vec<GaussInt>> = palette
        .iter()
        .map(|v| (0..=q as u32).map(|e| v.pow(e)).collect())
        .collect();
    let base = palette.len() as u64;
    let width = slots.len();

    let hits: Vec<u64> = (0..size as u64)
        .into_par_iter()
        .filter(|&code| {
            let mut digits = vec![0usize; width];
            let mut rest = code;
            for d in digits.iter_mut().rev() {
                *d = (rest % base) as usize;
                rest /= base;
            }
            let table: Vec<&[GaussInt]> = digits.iter().map(|&d| powers[d].as_slice()).collect();
            equations.iter().all(|eq| eq.vanishes(&table))
        })
        .collect();

    hits.into_iter()
        .map(|code| {
            let mut values = vec![GaussInt::zero(); q];
            let mut rest = code;
            for &slot in slots.iter().rev() {
                values[slot - 1] = palette[(rest % base) as usize].clone();
                rest /= base;
            }
            verify_candidate(&Potential1D::exact(values)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn small_periods_rejected() {
        assert_eq!(isospectral_system(2), Err(SearchError::PeriodTooSmall(2)));
        assert!(matches!(
            scan_candidates(2, &[1], &[g(0, 0)]),
            Err(SearchError::PeriodTooSmall(2))
        ));
    }

    #[test]
    fn period_three_system() {
        let s = isospectral_system(3).unwrap();
        assert_eq!(s.variables().len(), 3);
        let trace = MultiPoly::v(1) + MultiPoly::v(2) + MultiPoly::v(3);
        assert_eq!(s.equations()[2], trace);
        for (j, eq) in s.equations().iter().enumerate() {
            for (m, _) in eq.terms() {
                assert!(m.degree() as usize <= 3 - j);
            }
        }
    }

    #[test]
    fn macaulay_text() {
        let p =
            MultiPoly::v(1).pow(2).scale(&g(-3, 0)) + MultiPoly::v(2).scale(&g(2, -5)) + MultiPoly::constant(g(0, 1));
        assert_eq!(poly_to_macaulay2(&p), "-3*v1^2 + (2-5*ii)*v2 + ii");
        assert_eq!(poly_to_macaulay2(&(MultiPoly::v(1) - MultiPoly::v(3))), "-v3 + v1");
        assert_eq!(poly_to_macaulay2(&MultiPoly::zero()), "0");
        let empty = PolySystem::new(vec![VarId::v(1)], vec![]).unwrap();
        assert_eq!(
            to_macaulay2(&empty)
                .lines()
                .filter(|l| !l.starts_with("--"))
                .collect::<Vec<_>>(),
            ["K = toField(QQ[ii]/(ii^2+1));", "R = K[v1];"]
        );
    }

    #[test]
    fn undeclared_variable() {
        let err = PolySystem::new(vec![VarId::v(1)], vec![MultiPoly::v(2)]).unwrap_err();
        assert_eq!(err, SearchError::UndeclaredVariable(VarId::v(2)));
    }

    #[test]
    fn single_bump_fails_trace() {
        let v = Potential1D::exact(vec![1.into(), 0.into(), 0.into(), 0.into()]).unwrap();
        let r = verify_candidate(&v).unwrap();
        assert!(!r.isospectral);
        assert_eq!(r.residuals[&3], g(-1, 0));
        assert_eq!(r.residuals.len(), 4);
    }

    #[test]
    fn scan_limits() {
        let pal = [g(0, 0), g(1, 0)];
        assert_eq!(
            scan_candidates(8, &[1, 2, 3, 4, 5, 6, 7], &pal),
            Err(SearchError::TooManySlots { n: 7, max: 6 })
        );
        assert_eq!(
            scan_candidates(4, &[1, 5], &pal),
            Err(SearchError::SlotOutOfRange { slot: 5, q: 4 })
        );
        assert_eq!(scan_candidates(4, &[2, 2], &pal), Err(SearchError::DuplicateSlot(2)));
        let wide: Vec<GaussInt> = (0..15).map(|x| g(x, 0)).collect();
        assert!(matches!(
            scan_candidates(6, &[1, 2, 3, 4, 5, 6], &wide),
            Err(SearchError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn scan_finds_four_slot_point() {
        let pal = [g(0, 0), g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)];
        let hits = scan_candidates(4, &[1, 2, 3, 4], &pal).unwrap();
        let target = [g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)];
        assert!(hits.iter().any(|r| r.candidate.exact_values() == Some(&target[..])));
        assert!(hits.iter().any(|r| r.candidate.is_zero()));
        assert!(hits.iter().all(|r| r.isospectral));
    }

    #[test]
    fn constant_palette_has_no_nonzero_solution() {
        let hits = scan_candidates(4, &[1, 2, 3, 4], &[g(1, 0)]).unwrap();
        assert!(hits.is_empty());
    }
}
