use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::FloquetError;
use crate::exact::{ComplexF, GaussInt, MultiPoly};

/// Values of one period of a potential.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialValues {
    Exact(Vec<GaussInt>),
    Numeric(Vec<ComplexF>),
}

/// A `q`-periodic potential on `Z`, stored as its values on `1..=q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential1D {
    values: PotentialValues,
}

impl Potential1D {
    pub fn exact(values: Vec<GaussInt>) -> Result<Self, FloquetError> {
        if values.is_empty() {
            return Err(FloquetError::PeriodTooSmall(0));
        }
        Ok(Potential1D {
            values: PotentialValues::Exact(values),
        })
    }

    pub fn numeric(values: Vec<ComplexF>) -> Result<Self, FloquetError> {
        if values.is_empty() {
            return Err(FloquetError::PeriodTooSmall(0));
        }
        if values.iter().any(|z| !z.is_finite()) {
            return Err(FloquetError::NonFinite);
        }
        Ok(Potential1D {
            values: PotentialValues::Numeric(values),
        })
    }

    /// The zero potential of period `q`.
    pub fn zero(q: usize) -> Result<Self, FloquetError> {
        Potential1D::exact(vec![GaussInt::zero(); q])
    }

    pub fn period(&self) -> usize {
        match &self.values {
            PotentialValues::Exact(v) => v.len(),
            PotentialValues::Numeric(v) => v.len(),
        }
    }

    pub fn values(&self) -> &PotentialValues {
        &self.values
    }

    pub fn exact_values(&self) -> Option<&[GaussInt]> {
        match &self.values {
            PotentialValues::Exact(v) => Some(v),
            PotentialValues::Numeric(_) => None,
        }
    }

    pub fn complex_values(&self) -> Vec<ComplexF> {
        match &self.values {
            PotentialValues::Exact(v) => v.iter().map(GaussInt::to_complex).collect(),
            PotentialValues::Numeric(v) => v.clone(),
        }
    }

    /// `max_n |v(n)|`.
    pub fn max_abs(&self) -> f64 {
        self.complex_values().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        match &self.values {
            PotentialValues::Exact(v) => v.iter().all(Zero::is_zero),
            PotentialValues::Numeric(v) => v.iter().all(|z| z.norm() == 0.0),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Potential1D {
        let values = match &self.values {
            PotentialValues::Exact(v) => PotentialValues::Exact(v.iter().map(GaussInt::conj).collect()),
            PotentialValues::Numeric(v) => PotentialValues::Numeric(v.iter().map(|z| z.conj()).collect()),
        };
        Potential1D { values }
    }

    /// The diagonal as constant polynomials; `None` for numeric potentials.
    pub fn diagonal_exact(&self) -> Option<Vec<MultiPoly>> {
        self.exact_values()
            .map(|v| v.iter().cloned().map(MultiPoly::constant).collect())
    }
}

/// The period-`2m` potential with `1+i, 1-i` at positions 1, 2 and
/// `-1+i, -1-i` at positions `m+1, m+2`, zero elsewhere.
///
/// Its Floquet spectrum coincides with that of the zero potential.
pub fn four_slot_potential(m: usize) -> Result<Potential1D, FloquetError> {
    let pattern = PotentialPattern::new(m)?;
    let mut values = vec![GaussInt::zero(); 2 * m];
    let slot_values = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    for (pos, (re, im)) in pattern.slots().into_iter().zip(slot_values) {
        values[pos - 1] = GaussInt::new(re, im);
    }
    Potential1D::exact(values)
}

/// Period `2m` with symbolic values `v_1, v_2, v_3, v_4` at positions
/// `1, 2, m+1, m+2` and zeros elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PotentialPattern {
    m: usize,
}

impl PotentialPattern {
    /// Needs `m >= 2`; at `m = 1` positions 2 and `m+1` coincide.
    pub fn new(m: usize) -> Result<Self, FloquetError> {
        if m < 2 {
            return Err(FloquetError::MTooSmall(m));
        }
        Ok(PotentialPattern { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn period(&self) -> usize {
        2 * self.m
    }

    /// 1-based positions of `v_1..v_4`.
    pub fn slots(&self) -> [usize; 4] {
        [1, 2, self.m + 1, self.m + 2]
    }

    pub fn diagonal(&self) -> Vec<MultiPoly> {
        let mut diag = vec![MultiPoly::zero(); self.period()];
        for (idx, pos) in self.slots().into_iter().enumerate() {
            diag[pos - 1] = MultiPoly::v(idx as u32 + 1);
        }
        diag
    }
}

/// `V(n) = V_1(n_1) + … + V_d(n_d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparablePotential {
    axes: Vec<Potential1D>,
}

impl SeparablePotential {
    pub fn new(axes: Vec<Potential1D>) -> Result<Self, FloquetError> {
        if axes.is_empty() {
            return Err(FloquetError::NoAxes);
        }
        Ok(SeparablePotential { axes })
    }

    /// The zero potential with the given axis periods.
    pub fn zero(periods: &[usize]) -> Result<Self, FloquetError> {
        let axes = periods
            .iter()
            .map(|&q| Potential1D::zero(q))
            .collect::<Result<_, _>>()?;
        SeparablePotential::new(axes)
    }

    pub fn axes(&self) -> &[Potential1D] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn periods(&self) -> Vec<usize> {
        self.axes.iter().map(Potential1D::period).collect()
    }

    /// `Q = ∏ q_j`, the size of the Floquet matrix.
    pub fn cell_size(&self) -> usize {
        self.axes.iter().map(Potential1D::period).product()
    }

    /// Parses the JSON potential file format.
    pub fn from_json(text: &str) -> Result<Self, FloquetError> {
        let file: PotentialFile = serde_json::from_str(text).map_err(|e| FloquetError::InvalidFile(e.to_string()))?;
        let axes = file
            .axes
            .into_iter()
            .map(AxisFile::into_potential)
            .collect::<Result<_, _>>()?;
        SeparablePotential::new(axes)
    }

    /// Serializes to the JSON potential file format. Exact values must fit in
    /// `i64`.
    pub fn to_json(&self) -> Result<String, FloquetError> {
        let axes = self
            .axes
            .iter()
            .map(AxisFile::from_potential)
            .collect::<Result<_, _>>()?;
        serde_json::to_string(&PotentialFile { axes }).map_err(|e| FloquetError::InvalidFile(e.to_string()))
    }
}

/// A point of `[0, 1]^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quasimomentum {
    k: Vec<f64>,
}

impl Quasimomentum {
    pub fn new(k: Vec<f64>) -> Result<Self, FloquetError> {
        if let Some(&bad) = k.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(FloquetError::QuasimomentumOutOfRange(bad));
        }
        Ok(Quasimomentum { k })
    }

    pub fn zero(d: usize) -> Self {
        Quasimomentum { k: vec![0.0; d] }
    }

    pub fn components(&self) -> &[f64] {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// The `n^d` points `(i_1/(n-1), …, i_d/(n-1))`, last axis fastest.
    pub fn grid(d: usize, n: usize) -> Vec<Quasimomentum> {
        let ticks: Vec<f64> = match n {
            0 => Vec::new(),
            1 => vec![0.0],
            _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
        };
        let mut points = vec![Vec::new()];
        for _ in 0..d {
            points = points
                .into_iter()
                .flat_map(|p| {
                    ticks.iter().map(move |&t| {
                        let mut q = p.clone();
                        q.push(t);
                        q
                    })
                })
                .collect();
        }
        points.into_iter().map(|k| Quasimomentum { k }).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PotentialFile {
    axes: Vec<AxisFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisFile {
    period: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values_f: Option<Vec<[f64; 2]>>,
}

impl AxisFile {
    fn into_potential(self) -> Result<Potential1D, FloquetError> {
        let pot = match (self.values, self.values_f) {
            (Some(v), None) => Potential1D::exact(v.into_iter().map(|[re, im]| GaussInt::new(re, im)).collect())?,
            (None, Some(v)) => Potential1D::numeric(v.into_iter().map(|[re, im]| ComplexF::new(re, im)).collect())?,
            _ => {
                return Err(FloquetError::InvalidFile(
                    "each axis needs exactly one of `values` or `values_f`".into(),
                ))
            }
        };
        if pot.period() != self.period {
            return Err(FloquetError::LengthMismatch {
                period: self.period,
                len: pot.period(),
            });
        }
        Ok(pot)
    }

    fn from_potential(p: &Potential1D) -> Result<AxisFile, FloquetError> {
        let period = p.period();
        Ok(match p.values() {
            PotentialValues::Exact(v) => {
                let to_i64 = |x: &num_bigint::BigInt| {
                    i64::try_from(x)
                        .map_err(|_| FloquetError::InvalidFile(format!("{x} does not fit in a JSON integer")))
                };
                let values = v
                    .iter()
                    .map(|g| Ok([to_i64(&g.re)?, to_i64(&g.im)?]))
                    .collect::<Result<_, FloquetError>>()?;
                AxisFile {
                    period,
                    values: Some(values),
                    values_f: None,
                }
            }
            PotentialValues::Numeric(v) => AxisFile {
                period,
                values: None,
                values_f: Some(v.iter().map(|z| [z.re, z.im]).collect()),
            },
        })
    }
}
