use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussInt;

/// A polynomial variable: the spectral parameter `λ` or a potential value `v_i`.
///
/// Ordered `λ < v_1 < v_2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Lambda,
    V(u32),
}

impl VarId {
    /// `v_index`; indices start at 1.
    pub fn v(index: u32) -> Self {
        assert!(index >= 1, "potential variables are numbered from 1");
        VarId::V(index)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Lambda => f.write_str("l"),
            VarId::V(i) => write!(f, "v{i}"),
        }
    }
}

/// A power product of variables.
///
/// Factors are kept sorted from the largest variable down and never carry a
/// zero exponent. The derived ordering is graded lexicographic: total degree
/// first, then exponents compared from the largest variable down.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(var: VarId) -> Self {
        Monomial::pow(var, 1)
    }

    pub fn pow(var: VarId, exp: u32) -> Self {
        Monomial::from_factors([(var, exp)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs; repeated
    /// variables multiply and zero exponents vanish.
    pub fn from_factors(factors: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (var, exp) in factors {
            *map.entry(var).or_default() += exp;
        }
        let factors: Vec<_> = map.into_iter().rev().filter(|&(_, e)| e > 0).collect();
        let degree = factors.iter().map(|&(_, e)| e).sum();
        Monomial { degree, factors }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors from the largest variable down.
    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn exponent(&self, var: VarId) -> u32 {
        self.factors.iter().find(|&&(v, _)| v == var).map_or(0, |&(_, e)| e)
    }

    /// Splits off the power of `var`, returning `(exponent, remaining monomial)`.
    pub fn split_off(&self, var: VarId) -> (u32, Monomial) {
        let exp = self.exponent(var);
        let factors: Vec<_> = self.factors.iter().copied().filter(|&(v, _)| v != var).collect();
        (
            exp,
            Monomial {
                degree: self.degree - exp,
                factors,
            },
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut factors = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    factors.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    factors.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&a[i..]);
        factors.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (idx, &(var, exp)) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            match exp {
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{exp}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
}

/// Sparse multivariate polynomial over the Gaussian integers.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, GaussInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(GaussInt::one())
    }

    pub fn constant(c: impl Into<GaussInt>) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(var: VarId) -> Self {
        MultiPoly::term(GaussInt::one(), Monomial::var(var))
    }

    /// The spectral variable `λ`.
    pub fn lambda() -> Self {
        MultiPoly::var(VarId::Lambda)
    }

    /// The potential variable `v_index`.
    pub fn v(index: u32) -> Self {
        MultiPoly::var(VarId::v(index))
    }

    pub fn term(coeff: impl Into<GaussInt>, mono: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(mono, coeff.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .first_key_value()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussInt)> {
        self.terms.iter()
    }

    /// `[t]p`: the coefficient of `t`, zero when absent.
    pub fn coeff(&self, mono: &Monomial) -> GaussInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The constant term, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussInt> {
        match self.terms.len() {
            0 => Some(GaussInt::zero()),
            1 => self
                .terms
                .first_key_value()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: GaussInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    /// Views the polynomial as univariate in `var`: entry `j` is `[var^j]p`.
    pub fn coeffs_in(&self, var: VarId) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let (exp, rest) = m.split_off(var);
            out[exp as usize].add_term(rest, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn scale(&self, c: &GaussInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        (0..exp).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    /// Replaces every occurrence of `var` with `value`.
    pub fn substitute(&self, var: VarId, value: &MultiPoly) -> MultiPoly {
        let mut powers = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (exp, rest) = m.split_off(var);
            while powers.len() <= exp as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let t = MultiPoly::term(c.clone(), rest);
            out += &(&t * &powers[exp as usize]);
        }
        out
    }

    /// Floating evaluation. Term values are combined by pairwise summation in
    /// monomial order, so the result does not depend on anything but the input.
    pub fn eval(&self, assign: &BTreeMap<VarId, Complex64>) -> Result<Complex64, PolyError> {
        let values = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut x = c.to_complex();
                for &(var, exp) in m.factors() {
                    let v = assign.get(&var).ok_or(PolyError::MissingAssignment(var))?;
                    x *= v.powu(exp);
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(pairwise_sum(&values))
    }

    /// Exact evaluation at Gaussian-integer points.
    pub fn eval_exact(&self, assign: &BTreeMap<VarId, GaussInt>) -> Result<GaussInt, PolyError> {
        let mut acc = GaussInt::zero();
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for &(var, exp) in m.factors() {
                let v = assign.get(&var).ok_or(PolyError::MissingAssignment(var))?;
                x *= v.pow(exp);
            }
            acc += x;
        }
        Ok(acc)
    }
}

fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

impl From<GaussInt> for MultiPoly {
    fn from(c: GaussInt) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<VarId> for MultiPoly {
    fn from(v: VarId) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }

        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(GaussInt::one())
    }
}

/// Canonical text: terms from the largest monomial down, joined by ` + `,
/// each as `(a+bi)*factor*factor^e`. The zero polynomial prints as `0`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
