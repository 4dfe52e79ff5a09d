use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of Z[i] with arbitrary-precision parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Nearest double-precision value. Parts beyond `f64` range become infinite.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussInt::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::new(re, 0)
    }
}

impl From<BigInt> for GaussInt {
    fn from(re: BigInt) -> Self {
        GaussInt { re, im: BigInt::zero() }
    }
}

impl From<(i64, i64)> for GaussInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussInt::new(re, im)
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;

    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;

    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;

    // (a+bi)(c+di) = (ac-bd) + (ad+bc)i
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;

    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;

    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident $assign_tr:ident $assign_method:ident),*) => {$(
        impl $tr for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &GaussInt) -> GaussInt {
                (&self).$method(rhs)
            }
        }

        impl $assign_tr<&GaussInt> for GaussInt {
            fn $assign_method(&mut self, rhs: &GaussInt) {
                *self = (&*self).$method(rhs);
            }
        }

        impl $assign_tr for GaussInt {
            fn $assign_method(&mut self, rhs: GaussInt) {
                *self = (&*self).$method(&rhs);
            }
        }
    )*};
}

forward_owned!(
    Add add AddAssign add_assign,
    Sub sub SubAssign sub_assign,
    Mul mul MulAssign mul_assign
);

/// Canonical form `(a+bi)`, e.g. `(1-1i)`, `(-2+0i)`.
impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a Gaussian integer")]
pub struct ParseGaussIntError(pub String);

/// Accepts `3`, `-2i`, `i`, `1+i`, `-1-2i`, `(4-0i)` and the like.
impl FromStr for GaussInt {
    type Err = ParseGaussIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussIntError(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(err());
        }
        let parse_int = |x: &str| x.parse::<BigInt>().map_err(|_| err());
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussInt::from(parse_int(&t)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            BigInt::zero()
        } else {
            parse_int(re_part)?
        };
        let im = match im_part {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            x => parse_int(x.strip_prefix('+').unwrap_or(x))?,
        };
        Ok(GaussInt { re, im })
    }
}
