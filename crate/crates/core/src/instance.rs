//! Links, instances and oblivious power assignments.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SinrError};
use crate::metric::{euclidean, FadingParams};
use crate::numeric::{Measure, Scalar};

/// A point of the metric space. Log-precision instances use exact integer
/// coordinates on a line.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Real(Vec<f64>),
    Int(BigInt),
}

impl Point {
    pub fn real(coords: impl Into<Vec<f64>>) -> Self {
        Point::Real(coords.into())
    }

    pub fn int(x: impl Into<BigInt>) -> Self {
        Point::Int(x.into())
    }

    pub fn dim(&self) -> usize {
        match self {
            Point::Real(c) => c.len(),
            Point::Int(_) => 1,
        }
    }

    /// Coordinates as floats (lossy for huge integers).
    pub fn to_f64s(&self) -> Vec<f64> {
        match self {
            Point::Real(c) => c.clone(),
            Point::Int(x) => vec![num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)],
        }
    }
}

pub fn point_distance(a: &Point, b: &Point) -> Measure {
    match (a, b) {
        (Point::Real(p), Point::Real(q)) => Measure::Float(euclidean(p, q)),
        (Point::Int(x), Point::Int(y)) => Measure::Exact((x - y).magnitude().clone()),
        (p, q) => Measure::Float(euclidean(&p.to_f64s(), &q.to_f64s())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub id: u64,
    pub sender: Point,
    pub receiver: Point,
    pub weight: f64,
}

impl Link {
    pub fn new(id: u64, sender: Point, receiver: Point) -> Self {
        Self { id, sender, receiver, weight: 1.0 }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn length(&self) -> Measure {
        point_distance(&self.sender, &self.receiver)
    }

    /// Same link with sender and receiver exchanged.
    pub fn reversed(&self) -> Self {
        Self {
            id: self.id,
            sender: self.receiver.clone(),
            receiver: self.sender.clone(),
            weight: self.weight,
        }
    }
}

/// How link-to-link distance is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Mode {
    /// `d_wv = d(s_w, r_v)`.
    #[default]
    #[serde(rename = "uni")]
    Unidirectional,
    /// Shortest distance between any endpoints of the two links.
    #[serde(rename = "bi")]
    Bidirectional,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Unidirectional => "uni",
            Mode::Bidirectional => "bi",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Precision {
    #[default]
    #[serde(rename = "float")]
    Float,
    #[serde(rename = "log2")]
    Log2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub fading: FadingParams,
    pub beta: f64,
    pub noise: f64,
    pub mode: Mode,
    pub precision: Precision,
    pub links: Vec<Link>,
}

impl Instance {
    /// Float-precision, unidirectional, noiseless instance.
    pub fn new(fading: FadingParams, beta: f64, links: Vec<Link>) -> Result<Self> {
        let inst = Self {
            fading,
            beta,
            noise: 0.0,
            mode: Mode::Unidirectional,
            precision: Precision::Float,
            links,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_noise(mut self, noise: f64) -> Result<Self> {
        self.noise = noise;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.fading.validate()?;
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(SinrError::Validation(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.noise >= 0.0) || !self.noise.is_finite() {
            return Err(SinrError::Validation(format!(
                "noise must be nonnegative, got {}",
                self.noise
            )));
        }
        let dim = self.fading.metric.dim as usize;
        if self.precision == Precision::Log2 && dim != 1 {
            return Err(SinrError::Validation("log2 precision requires a 1-dimensional metric".into()));
        }
        let mut seen = HashSet::with_capacity(self.links.len());
        for link in &self.links {
            if !seen.insert(link.id) {
                return Err(SinrError::Validation(format!("duplicate link id {}", link.id)));
            }
            if !(link.weight >= 0.0) || !link.weight.is_finite() {
                return Err(SinrError::Validation(format!(
                    "link {}: weight must be nonnegative, got {}",
                    link.id, link.weight
                )));
            }
            for p in [&link.sender, &link.receiver] {
                match (self.precision, p) {
                    (Precision::Float, Point::Real(c)) => {
                        if c.len() != dim {
                            return Err(SinrError::Validation(format!(
                                "link {}: expected {dim} coordinates, got {}",
                                link.id,
                                c.len()
                            )));
                        }
                        if c.iter().any(|x| !x.is_finite()) {
                            return Err(SinrError::Validation(format!(
                                "link {}: non-finite coordinate",
                                link.id
                            )));
                        }
                    }
                    (Precision::Log2, Point::Int(_)) => {}
                    (Precision::Float, Point::Int(_)) => {
                        return Err(SinrError::Validation(format!(
                            "link {}: integer coordinates require log2 precision",
                            link.id
                        )))
                    }
                    (Precision::Log2, Point::Real(_)) => {
                        return Err(SinrError::Validation(format!(
                            "link {}: log2 precision requires exact integer coordinates",
                            link.id
                        )))
                    }
                }
            }
            if link.length().is_zero() {
                return Err(SinrError::Validation(format!(
                    "link {}: sender and receiver coincide",
                    link.id
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.links.len()).collect()
    }

    pub fn alpha(&self) -> f64 {
        self.fading.alpha
    }

    pub fn length(&self, v: usize) -> Measure {
        self.links[v].length()
    }

    pub fn length_f64(&self, v: usize) -> f64 {
        self.length(v).to_f64()
    }

    /// Exact `ceil(lg length)` band key of a link.
    pub fn band(&self, v: usize) -> i64 {
        self.length(v).ceil_lg()
    }

    /// Interference distance `d_wv` from link `w` to link `v` under the
    /// instance mode. `w == v` gives the link length.
    pub fn link_distance(&self, w: usize, v: usize) -> Measure {
        let (lw, lv) = (&self.links[w], &self.links[v]);
        if w == v {
            return lv.length();
        }
        match self.mode {
            Mode::Unidirectional => point_distance(&lw.sender, &lv.receiver),
            Mode::Bidirectional => [
                point_distance(&lw.sender, &lv.receiver),
                point_distance(&lw.receiver, &lv.receiver),
                point_distance(&lw.sender, &lv.sender),
                point_distance(&lw.receiver, &lv.sender),
            ]
            .into_iter()
            .reduce(Measure::min_of)
            .expect("four candidates"),
        }
    }

    pub fn sender_distance(&self, v: usize, w: usize) -> Measure {
        point_distance(&self.links[v].sender, &self.links[w].sender)
    }

    /// Ratio of longest to shortest length over `set`, as `log2`.
    pub fn log2_delta(&self, set: &[usize]) -> f64 {
        let logs = set.iter().map(|&v| self.length(v).log2());
        let (lo, hi) = logs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
        if set.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }

    pub fn index_of_id(&self, id: u64) -> Option<usize> {
        self.links.iter().position(|l| l.id == id)
    }

    pub fn ids(&self, set: &[usize]) -> Vec<u64> {
        set.iter().map(|&v| self.links[v].id).collect()
    }

    /// Indices sorted by non-decreasing length, ties by id.
    pub fn by_length(&self, set: &[usize]) -> Vec<usize> {
        let mut keyed: Vec<(f64, u64, usize)> =
            set.iter().map(|&v| (self.length(v).log2(), self.links[v].id, v)).collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        keyed.into_iter().map(|(_, _, v)| v).collect()
    }
}

/// Oblivious power `P(l) = scale * l^gamma * (lg l)^delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerAssignment {
    pub gamma: f64,
    pub delta: f64,
    pub scale: f64,
}

impl PowerAssignment {
    pub fn new(gamma: f64, delta: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() || !gamma.is_finite() || !delta.is_finite() {
            return Err(SinrError::Validation(format!(
                "invalid power assignment gamma={gamma} delta={delta} scale={scale}"
            )));
        }
        Ok(Self { gamma, delta, scale })
    }

    pub fn uniform() -> Self {
        Self { gamma: 0.0, delta: 0.0, scale: 1.0 }
    }

    pub fn linear(alpha: f64) -> Self {
        Self { gamma: alpha, delta: 0.0, scale: 1.0 }
    }

    /// Mean (square-root) power `l^{alpha/2}`.
    pub fn mean(alpha: f64) -> Self {
        Self { gamma: alpha / 2.0, delta: 0.0, scale: 1.0 }
    }

    /// `l^alpha / lg l`.
    pub fn psi(alpha: f64) -> Self {
        Self { gamma: alpha, delta: -1.0, scale: 1.0 }
    }

    /// `lg l`.
    pub fn logarithmic() -> Self {
        Self { gamma: 0.0, delta: 1.0, scale: 1.0 }
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.scale *= factor;
        self
    }

    pub fn is_mean(&self, alpha: f64) -> bool {
        self.delta == 0.0 && self.gamma == alpha / 2.0
    }

    /// Checks positivity of `P` on every link of `inst`.
    pub fn validate_for(&self, inst: &Instance) -> Result<()> {
        Self::new(self.gamma, self.delta, self.scale)?;
        if self.delta != 0.0 {
            for (v, link) in inst.links.iter().enumerate() {
                if inst.length(v).log2() <= 0.0 {
                    return Err(SinrError::Validation(format!(
                        "link {}: power with a lg factor needs length > 1",
                        link.id
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn eval<T: Scalar>(&self, len: T) -> T {
        let mut p = T::from_f64(self.scale);
        if self.gamma != 0.0 {
            p = p * len.powf(self.gamma);
        }
        if self.delta != 0.0 {
            p = p * len.lg().powf(self.delta);
        }
        p
    }

    /// Power of a link of length `len`.
    pub fn power(&self, len: f64) -> f64 {
        self.eval(len)
    }
}

impl fmt::Display for PowerAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "custom:{},{}", self.gamma, self.delta)
    }
}
