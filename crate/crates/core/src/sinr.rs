//! Affectance, SINR feasibility and power-control feasibility.
//!
//! Every check dispatches on [`Precision`]: float instances are evaluated in
//! `f64`, log-precision instances in [`LogScalar`] so that doubly-exponential
//! lengths never overflow.

use crate::error::{Result, SinrError};
use crate::instance::{Instance, PowerAssignment};
use crate::numeric::{LogScalar, Measure, Scalar};

macro_rules! dispatch {
    ($inst:expr, $f:ident ( $($arg:expr),* )) => {
        match $inst.precision {
            $crate::instance::Precision::Float => $f::<f64>($($arg),*),
            $crate::instance::Precision::Log2 => $f::<$crate::numeric::LogScalar>($($arg),*),
        }
    };
    ($inst:expr, $f:ident ( $($arg:expr),* ), |$x:ident| $map:expr) => {
        match $inst.precision {
            $crate::instance::Precision::Float => {
                let $x = $f::<f64>($($arg),*);
                $map
            }
            $crate::instance::Precision::Log2 => {
                let $x = $f::<$crate::numeric::LogScalar>($($arg),*);
                $map
            }
        }
    };
}
pub(crate) use dispatch;

/// Interference distance `d_vw` (from `v`'s sender to `w`'s receiver, or the
/// minimum endpoint distance in bidirectional mode).
pub fn directed_distance(inst: &Instance, v: usize, w: usize) -> Measure {
    inst.link_distance(v, w)
}

/// Affectance of `w` on `v`; `None` when the interference distance is zero.
pub(crate) fn pair_affectance<T: Scalar>(
    inst: &Instance,
    power: &PowerAssignment,
    w: usize,
    v: usize,
) -> Option<T> {
    let d = inst.link_distance(w, v);
    if d.is_zero() {
        return None;
    }
    let lv = T::from_measure(&inst.length(v));
    let lw = T::from_measure(&inst.length(w));
    let d = T::from_measure(&d);
    Some(power.eval(lw) / power.eval(lv) * (lv / d).powf(inst.alpha()))
}

fn checked_pair<T: Scalar>(
    inst: &Instance,
    power: &PowerAssignment,
    w: usize,
    v: usize,
) -> Result<T> {
    if w == v {
        return Err(SinrError::Precondition("affectance of a link on itself".into()));
    }
    pair_affectance(inst, power, w, v)
        .ok_or(SinrError::Colocation(inst.links[w].id, inst.links[v].id))
}

/// `a_w(v) = (P_w / P_v) (l_v / d_wv)^alpha`. Saturates to `inf` for
/// log-precision values past the float range.
pub fn affectance_pair(
    inst: &Instance,
    power: &PowerAssignment,
    w: usize,
    v: usize,
) -> Result<f64> {
    dispatch!(inst, checked_pair(inst, power, w, v), |x| x.map(Scalar::to_f64))
}

pub fn affectance_pair_log(
    inst: &Instance,
    power: &PowerAssignment,
    w: usize,
    v: usize,
) -> Result<LogScalar> {
    dispatch!(inst, checked_pair(inst, power, w, v), |x| x.map(Scalar::to_log))
}

fn set_affectance<T: Scalar>(
    inst: &Instance,
    power: &PowerAssignment,
    set: &[usize],
    v: usize,
) -> Result<T> {
    let mut terms = Vec::with_capacity(set.len());
    for &w in set.iter().filter(|&&w| w != v) {
        terms.push(checked_pair::<T>(inst, power, w, v)?);
    }
    Ok(T::sum(terms))
}

/// `a_S(v)`: total affectance of `set \ {v}` on `v`.
pub fn affectance_set(
    inst: &Instance,
    power: &PowerAssignment,
    set: &[usize],
    v: usize,
) -> Result<f64> {
    dispatch!(inst, set_affectance(inst, power, set, v), |x| x.map(Scalar::to_f64))
}

pub fn affectance_set_log(
    inst: &Instance,
    power: &PowerAssignment,
    set: &[usize],
    v: usize,
) -> Result<LogScalar> {
    dispatch!(inst, set_affectance(inst, power, set, v), |x| x.map(Scalar::to_log))
}

fn total_affectance<T: Scalar>(
    inst: &Instance,
    power: &PowerAssignment,
    set: &[usize],
    v: usize,
) -> Option<T> {
    let mut terms = Vec::with_capacity(set.len());
    for &w in set.iter().filter(|&&w| w != v) {
        terms.push(pair_affectance::<T>(inst, power, w, v)?);
    }
    Some(T::sum(terms))
}

fn p_signal<T: Scalar>(inst: &Instance, power: &PowerAssignment, set: &[usize], p: f64) -> bool {
    let bound = T::from_f64(1.0 / p);
    set.iter().all(|&v| match total_affectance::<T>(inst, power, set, v) {
        Some(a) => a <= bound,
        None => false,
    })
}

/// True iff every link of `set` has affectance at most `1/p`. Zero
/// interference distance counts as unbounded affectance.
pub fn is_p_signal(inst: &Instance, power: &PowerAssignment, set: &[usize], p: f64) -> Result<bool> {
    if !(p > 0.0) {
        return Err(SinrError::Domain(format!("p must be positive, got {p}")));
    }
    Ok(dispatch!(inst, p_signal(inst, power, set, p)))
}

fn sinr_condition<T: Scalar>(inst: &Instance, power: &PowerAssignment, set: &[usize]) -> bool {
    let alpha = inst.alpha();
    let beta = T::from_f64(inst.beta);
    let noise = T::from_f64(inst.noise);
    set.iter().all(|&v| {
        let lv = T::from_measure(&inst.length(v));
        let signal = power.eval(lv) / lv.powf(alpha);
        let mut terms = Vec::with_capacity(set.len());
        for &w in set.iter().filter(|&&w| w != v) {
            let d = inst.link_distance(w, v);
            if d.is_zero() {
                return false;
            }
            let lw = T::from_measure(&inst.length(w));
            terms.push(power.eval(lw) / T::from_measure(&d).powf(alpha));
        }
        let denom = T::sum(terms) + noise;
        if denom.to_log().is_zero() {
            return true;
        }
        signal / denom >= beta
    })
}

/// The SINR reception condition evaluated literally, noise included:
/// `(P_v / l_v^alpha) / (sum_w P_w / d_wv^alpha + N) >= beta` for every `v`.
pub fn is_sinr_feasible(inst: &Instance, power: &PowerAssignment, set: &[usize]) -> Result<bool> {
    Ok(dispatch!(inst, sinr_condition(inst, power, set)))
}

/// Largest total affectance suffered by any link of `set` (`inf` on
/// colocation).
pub fn max_affectance(inst: &Instance, power: &PowerAssignment, set: &[usize]) -> f64 {
    fn go<T: Scalar>(inst: &Instance, power: &PowerAssignment, set: &[usize]) -> f64 {
        set.iter()
            .map(|&v| total_affectance::<T>(inst, power, set, v).map_or(f64::INFINITY, |a| a.to_f64()))
            .fold(0.0, |m, a| if a > m { a } else { m })
    }
    dispatch!(inst, go(inst, power, set))
}

/// Dense pairwise affectance matrix `m[w][v] = a_w(v)` over `set`, in floats.
/// Colocated pairs are `inf`; the diagonal is zero.
pub fn affectance_matrix(
    inst: &Instance,
    power: &PowerAssignment,
    set: &[usize],
) -> Vec<Vec<f64>> {
    fn go<T: Scalar>(inst: &Instance, power: &PowerAssignment, set: &[usize]) -> Vec<Vec<f64>> {
        set.iter()
            .map(|&w| {
                set.iter()
                    .map(|&v| {
                        if w == v {
                            0.0
                        } else {
                            pair_affectance::<T>(inst, power, w, v)
                                .map_or(f64::INFINITY, |a| a.to_f64())
                        }
                    })
                    .collect()
            })
            .collect()
    }
    dispatch!(inst, go(inst, power, set))
}

/// Spectral radius estimate of the normalized interference matrix `beta F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub rho: f64,
    /// Collatz-Wielandt lower and upper bounds at termination.
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    /// `|rho - 1| < 1e-9`: the verdict sits on the feasibility boundary.
    pub boundary: bool,
}

impl SpectralEstimate {
    pub fn feasible(&self) -> bool {
        if self.upper < 1.0 {
            true
        } else if self.lower >= 1.0 {
            false
        } else {
            self.rho < 1.0
        }
    }
}

pub const SPECTRAL_TOL: f64 = 1e-10;
const SPECTRAL_MAX_ITER: usize = 200_000;

/// Spectral radius of a nonnegative matrix by power iteration on `A + I`.
///
/// The positive iterate gives Collatz-Wielandt bounds
/// `min_i (Ax)_i/x_i <= rho <= max_i (Ax)_i/x_i`; iteration stops once the
/// bounds decide `rho < 1` versus `rho >= 1`, or once the estimate settles
/// to [`SPECTRAL_TOL`] relative change.
pub fn spectral_radius(a: &[Vec<f64>]) -> SpectralEstimate {
    let n = a.len();
    if n == 0 {
        return SpectralEstimate { rho: 0.0, lower: 0.0, upper: 0.0, iterations: 0, boundary: false };
    }
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut settled = 0;
    let mut it = 0;
    loop {
        it += 1;
        for i in 0..n {
            y[i] = x[i] + a[i].iter().zip(&x).map(|(aij, xj)| aij * xj).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let r = y[i] / x[i] - 1.0;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let top = y.iter().cloned().fold(0.0, f64::max);
        let est = top / x.iter().cloned().fold(0.0, f64::max) - 1.0;
        let lo = lo.max(0.0);
        let done = |rho: f64| SpectralEstimate {
            rho,
            lower: lo,
            upper: hi,
            iterations: it,
            boundary: (rho - 1.0).abs() < 1e-9,
        };
        if hi < 1.0 || lo >= 1.0 || hi - lo <= SPECTRAL_TOL * hi.max(f64::MIN_POSITIVE) {
            let rho = if hi - lo <= SPECTRAL_TOL * hi.max(f64::MIN_POSITIVE) {
                0.5 * (lo + hi)
            } else {
                est.clamp(lo, hi)
            };
            return done(rho);
        }
        // reducible matrices: the bounds may never meet, the estimate still converges
        if (est - prev).abs() <= SPECTRAL_TOL * est.abs() {
            settled += 1;
            if settled >= 50 {
                return done(est.clamp(lo, hi));
            }
        } else {
            settled = 0;
        }
        if it >= SPECTRAL_MAX_ITER {
            return done(est.clamp(lo, hi));
        }
        prev = est;
        for i in 0..n {
            x[i] = y[i] / top;
        }
    }
}

/// Normalized interference matrix `beta * F` with `F_vw = (l_v / d_wv)^alpha`,
/// rows indexed by the affected link.
pub fn interference_matrix(inst: &Instance, set: &[usize]) -> Result<Vec<Vec<f64>>> {
    fn entry<T: Scalar>(inst: &Instance, v: usize, w: usize) -> Option<f64> {
        let d = inst.link_distance(w, v);
        if d.is_zero() {
            return None;
        }
        let lv = T::from_measure(&inst.length(v));
        Some((T::from_f64(inst.beta) * (lv / T::from_measure(&d)).powf(inst.alpha())).to_f64())
    }
    let mut m = vec![vec![0.0; set.len()]; set.len()];
    for (i, &v) in set.iter().enumerate() {
        for (j, &w) in set.iter().enumerate() {
            if i == j {
                continue;
            }
            let x = dispatch!(inst, entry(inst, v, w))
                .ok_or(SinrError::Colocation(inst.links[w].id, inst.links[v].id))?;
            if !x.is_finite() {
                return Err(SinrError::NumericRange(format!(
                    "interference entry for links {} -> {} exceeds float range",
                    inst.links[w].id, inst.links[v].id
                )));
            }
            m[i][j] = x;
        }
    }
    Ok(m)
}

pub fn pc_spectral(inst: &Instance, set: &[usize]) -> Result<SpectralEstimate> {
    Ok(spectral_radius(&interference_matrix(inst, set)?))
}

/// Whether some positive power vector makes `set` SINR-feasible with zero
/// noise, i.e. `rho(beta F) < 1`.
pub fn pc_feasible(inst: &Instance, set: &[usize]) -> Result<bool> {
    if set.is_empty() {
        return Err(SinrError::Precondition("power-control check on an empty set".into()));
    }
    Ok(pc_spectral(inst, set)?.feasible())
}
