//! Euclidean doubling-metric parameters and the closed-form separation
//! constants derived from them.
//!
//! Bounds are always computed from the doubling dimension `A` and the packing
//! constant `C` carried by [`MetricSpec`], never from dimension-specific
//! formulas, so a different doubling metric only needs a new `(A, C)` pair.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SinrError};

/// Packing constant of the plane (hexagonal packing density).
pub const PLANE_PACKING_CONSTANT: f64 = 0.907;

/// A Euclidean metric of a fixed dimension together with its packing constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub dim: u32,
    pub packing_constant: f64,
}

impl MetricSpec {
    pub fn new(dim: u32, packing_constant: f64) -> Result<Self> {
        if dim == 0 {
            return Err(SinrError::Validation("metric dimension must be >= 1".into()));
        }
        if !(packing_constant > 0.0) || !packing_constant.is_finite() {
            return Err(SinrError::Validation(format!(
                "packing constant must be positive, got {packing_constant}"
            )));
        }
        Ok(Self { dim, packing_constant })
    }

    /// The plane with `C = 0.907`.
    pub fn plane() -> Self {
        Self { dim: 2, packing_constant: PLANE_PACKING_CONSTANT }
    }

    /// Dimension with the default packing constant; only the plane has one.
    pub fn with_default_constant(dim: u32) -> Result<Self> {
        if dim == 2 {
            Ok(Self::plane())
        } else {
            Err(SinrError::Validation(format!(
                "packing constant is required for dimension {dim}"
            )))
        }
    }

    /// Assouad dimension `A`.
    pub fn assouad(&self) -> f64 {
        self.dim as f64
    }
}

/// Path-loss exponent paired with the metric it fades in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingParams {
    pub alpha: f64,
    pub metric: MetricSpec,
}

impl FadingParams {
    pub fn new(alpha: f64, metric: MetricSpec) -> Result<Self> {
        let f = Self { alpha, metric };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha <= self.metric.assouad() {
            return Err(SinrError::FadingViolation { alpha: self.alpha, dim: self.metric.dim });
        }
        Ok(())
    }

    /// `alpha - A`; the separation constants blow up as this approaches zero.
    pub fn fading_margin(&self) -> f64 {
        self.alpha - self.metric.assouad()
    }
}

/// Euclidean distance between two points of the metric.
pub fn distance(p: &[f64], q: &[f64], m: &MetricSpec) -> Result<f64> {
    let dim = m.dim as usize;
    if p.len() != dim || q.len() != dim {
        return Err(SinrError::Validation(format!(
            "expected {dim} coordinates, got {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(euclidean(p, q))
}

pub(crate) fn euclidean(p: &[f64], q: &[f64]) -> f64 {
    match p.len() {
        1 => (p[0] - q[0]).abs(),
        2 => (p[0] - q[0]).hypot(p[1] - q[1]),
        _ => p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt(),
    }
}

/// Riemann zeta function for real `x > 1`.
///
/// Partial sum up to `T - 1` followed by the Euler-Maclaurin tail
/// `T^{1-x}/(x-1) + T^{-x}/2 + ...` through the `B_6` term. `T` doubles until
/// the first omitted term drops below `1e-13`, capped at `10^7`.
pub fn zeta(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(SinrError::Domain(format!("zeta requires x > 1, got {x}")));
    }
    let omitted = |t: f64| {
        let rising: f64 = (0..7).map(|k| x + k as f64).product();
        rising / 1_209_600.0 * t.powf(-x - 7.0)
    };
    let mut t = 16.0_f64;
    while omitted(t) > 1e-13 && t < 1e7 {
        t *= 2.0;
    }
    let t = t.min(1e7);
    let n = t as u64;
    // smallest terms first
    let mut head = 0.0;
    for k in (1..n).rev() {
        head += (k as f64).powf(-x);
    }
    let tail = t.powf(1.0 - x) / (x - 1.0) + 0.5 * t.powf(-x) + x / 12.0 * t.powf(-x - 1.0)
        - x * (x + 1.0) * (x + 2.0) / 720.0 * t.powf(-x - 3.0)
        + x * (x + 1.0) * (x + 2.0) * (x + 3.0) * (x + 4.0) / 30240.0 * t.powf(-x - 5.0);
    Ok(head + tail)
}

/// `C' = alpha * C * 4^A * zeta(alpha + 1 - A)`.
pub fn c_prime(f: &FadingParams) -> Result<f64> {
    f.validate()?;
    let a = f.metric.assouad();
    Ok(f.alpha * f.metric.packing_constant * 4f64.powf(a) * zeta(f.alpha + 1.0 - a)?)
}

/// Sufficient sender separation factor `z1(p) = 4 (p C')^{1/alpha}`.
pub fn z1(p: f64, f: &FadingParams) -> Result<f64> {
    if !(p > 0.0) {
        return Err(SinrError::Domain(format!("z1 requires p > 0, got {p}")));
    }
    Ok(4.0 * (p * c_prime(f)?).powf(1.0 / f.alpha))
}

/// Necessary sender separation factor `z2(p) = p^{1/alpha} - 1`.
pub fn z2(p: f64, alpha: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(SinrError::Domain(format!("z2 requires p > 0, got {p}")));
    }
    Ok(p.powf(1.0 / alpha) - 1.0)
}

/// Packing bound `C (1 + 2a/b)^A` on independent sets of `U_b` inside a
/// closed `U_a` neighborhood.
pub fn udg_independence_bound(a: f64, b: f64, m: &MetricSpec) -> f64 {
    m.packing_constant * (1.0 + 2.0 * a / b).powf(m.assouad())
}

/// Approximation factor of the equilength unit-disc scheduler:
/// `C (1 + 2 z1(p_suff) / z2(p_nec))^A`.
pub fn equilength_ratio_bound(p_suff: f64, p_nec: f64, f: &FadingParams) -> Result<f64> {
    let zs = z1(p_suff, f)?;
    let zn = z2(p_nec, f.alpha)?;
    if !(zn > 0.0) {
        return Err(SinrError::DegenerateBound(format!(
            "z2({p_nec}) = {zn}; necessary separation must be positive"
        )));
    }
    Ok(udg_independence_bound(zs, zn, &f.metric))
}
