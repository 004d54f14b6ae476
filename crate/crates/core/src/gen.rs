//! Reproducible instance generators.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SinrError};
use crate::instance::{Instance, Link, Mode, Point, PowerAssignment, Precision};
use crate::metric::{FadingParams, MetricSpec};
use crate::sinr::max_affectance;

/// Instance-wide parameters shared by every generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub alpha: f64,
    pub beta: f64,
    pub noise: f64,
    pub mode: Mode,
    pub dim: u32,
    pub packing_constant: f64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        Self {
            alpha: 3.0,
            beta: 1.0,
            noise: 0.0,
            mode: Mode::Unidirectional,
            dim: 2,
            packing_constant: MetricSpec::plane().packing_constant,
        }
    }
}

impl InstanceParams {
    pub fn fading(&self) -> Result<FadingParams> {
        FadingParams::new(self.alpha, MetricSpec::new(self.dim, self.packing_constant)?)
    }

    fn build(&self, links: Vec<Link>, precision: Precision) -> Result<Instance> {
        let inst = Instance {
            fading: self.fading()?,
            beta: self.beta,
            noise: self.noise,
            mode: self.mode,
            precision,
            links,
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Variant of the doubly-exponential lower-bound construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LowerBoundVariant {
    Forward,
    Reversed,
    Combined,
}

/// A complete, seedable description of a generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenSpec {
    Random { n: usize, side: f64, len_min: f64, len_max: f64, seed: u64, params: InstanceParams },
    Equilength { n: usize, side: f64, len: f64, seed: u64, params: InstanceParams },
    Dispersed { n: usize, len_min: f64, len_max: f64, min_sep: f64, seed: u64, params: InstanceParams },
    Grid { m: usize, q: f64, params: InstanceParams },
    LowerBound { n: usize, t: u32, c1: u32, alpha: f64, variant: LowerBoundVariant },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Instance> {
        match *self {
            GenSpec::Random { n, side, len_min, len_max, seed, ref params } => {
                gen_random(n, side, len_min, len_max, seed, params)
            }
            GenSpec::Equilength { n, side, len, seed, ref params } => {
                gen_equilength(n, side, len, seed, params)
            }
            GenSpec::Dispersed { n, len_min, len_max, min_sep, seed, ref params } => {
                gen_dispersed(n, len_min, len_max, min_sep, seed, params)
            }
            GenSpec::Grid { m, q, ref params } => gen_grid(m, q, params),
            GenSpec::LowerBound { n, t, c1, alpha, variant } => gen_lowerbound(n, t, c1, alpha, variant),
        }
    }
}

/// Seeded permutation of `0..n`, used as an arrival order for online runs.
pub fn arrival_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

fn unit_direction(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    if dim == 2 {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        return vec![theta.cos(), theta.sin()];
    }
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn attach_receiver(id: u64, sender: Vec<f64>, len: f64, rng: &mut impl Rng) -> Link {
    let dir = unit_direction(rng, sender.len());
    let receiver: Vec<f64> = sender.iter().zip(&dir).map(|(s, d)| s + len * d).collect();
    Link::new(id, Point::real(sender), Point::real(receiver))
}

fn check_lengths(len_min: f64, len_max: f64) -> Result<()> {
    if !(len_min > 0.0 && len_min <= len_max && len_max.is_finite()) {
        return Err(SinrError::Validation(format!(
            "need 0 < len_min <= len_max, got {len_min} and {len_max}"
        )));
    }
    Ok(())
}

/// Senders uniform in `[0, side]^dim`, receivers in a uniform direction at a
/// length uniform in `[len_min, len_max]`.
pub fn gen_random(
    n: usize,
    side: f64,
    len_min: f64,
    len_max: f64,
    seed: u64,
    params: &InstanceParams,
) -> Result<Instance> {
    check_lengths(len_min, len_max)?;
    if !(len_max <= side) || !side.is_finite() {
        return Err(SinrError::Validation(format!("need len_max <= side, got {len_max} and {side}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = params.dim as usize;
    let links = (0..n)
        .map(|i| {
            let sender: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=side)).collect();
            let len = if len_min == len_max { len_min } else { rng.random_range(len_min..=len_max) };
            attach_receiver(i as u64, sender, len, &mut rng)
        })
        .collect();
    params.build(links, Precision::Float)
}

/// Random links with lengths in `[len, 1.5 len]`, so the longest is less
/// than twice the shortest.
pub fn gen_equilength(n: usize, side: f64, len: f64, seed: u64, params: &InstanceParams) -> Result<Instance> {
    gen_random(n, side, len, 1.5 * len, seed, params)
}

/// Random links whose senders are pairwise at least `min_sep` apart, placed
/// by sequential rejection sampling in a square sized for the requested
/// count.
pub fn gen_dispersed(
    n: usize,
    len_min: f64,
    len_max: f64,
    min_sep: f64,
    seed: u64,
    params: &InstanceParams,
) -> Result<Instance> {
    check_lengths(len_min, len_max)?;
    if !(min_sep > 0.0) || !min_sep.is_finite() {
        return Err(SinrError::Validation(format!("min_sep must be positive, got {min_sep}")));
    }
    let dim = params.dim as usize;
    let side = 1.8 * min_sep * (n.max(1) as f64).powf(1.0 / dim as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut senders: Vec<Vec<f64>> = Vec::with_capacity(n);
    while senders.len() < n {
        let mut attempts = 0;
        let p = loop {
            let p: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=side)).collect();
            if senders.iter().all(|q| crate::metric::euclidean(&p, q) >= min_sep) {
                break p;
            }
            attempts += 1;
            if attempts > 100_000 {
                return Err(SinrError::Validation(format!(
                    "could not place {n} senders {min_sep} apart"
                )));
            }
        };
        senders.push(p);
    }
    let links = senders
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let len = if len_min == len_max { len_min } else { rng.random_range(len_min..=len_max) };
            attach_receiver(i as u64, s, len, &mut rng)
        })
        .collect();
    params.build(links, Precision::Float)
}

/// `m x m` unit-length vertical links with senders on the lattice `q Z^2`.
pub fn gen_grid(m: usize, q: f64, params: &InstanceParams) -> Result<Instance> {
    if m == 0 || !(q > 0.0) {
        return Err(SinrError::Validation(format!("need m >= 1 and q > 0, got {m} and {q}")));
    }
    if params.dim != 2 {
        return Err(SinrError::Validation("grid instances live in the plane".into()));
    }
    let links = (0..m * m)
        .map(|k| {
            let (i, j) = ((k / m) as f64, (k % m) as f64);
            Link::new(k as u64, Point::real([i * q, j * q]), Point::real([i * q, j * q + 1.0]))
        })
        .collect();
    params.build(links, Precision::Float)
}

/// Largest total affectance in a uniform-power grid instance.
pub fn grid_max_affectance(m: usize, q: f64, params: &InstanceParams) -> Result<f64> {
    let inst = gen_grid(m, q, params)?;
    Ok(max_affectance(&inst, &PowerAssignment::uniform(), &inst.all()))
}

/// Exact coordinates of the construction as `(sender, receiver)` pairs:
/// `l_i = 2^{t^{i + c1}}`, receiver `i` at `a_{i-1}`, sender at
/// `-(l_i - a_{i-1})` where `a_i` sums `l_0..=l_i`.
pub fn lowerbound_coordinates(n: usize, t: u32, c1: u32) -> Result<Vec<(BigInt, BigInt)>> {
    if t < 4 {
        return Err(SinrError::Validation(format!("t must be at least 4, got {t}")));
    }
    if n == 0 {
        return Err(SinrError::Validation("n must be at least 1".into()));
    }
    let pow2 = |i: u32| -> Result<BigInt> {
        let e = (t as u64)
            .checked_pow(i)
            .filter(|&e| e <= 1 << 26)
            .ok_or_else(|| SinrError::Validation(format!("length 2^({t}^{i}) is too large")))?;
        Ok(BigInt::one() << e)
    };
    let mut a = pow2(c1)?;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let l = pow2(i + c1)?;
        out.push((-(&l - &a), a.clone()));
        a += l;
    }
    Ok(out)
}

/// The collinear lower-bound instance on which every oblivious power
/// assignment of one family needs many slots. `reversed` swaps senders and
/// receivers; `combined` places a reversed copy `2^{t^{n + c1 + 1}}` to the
/// right of the forward copy.
pub fn gen_lowerbound(
    n: usize,
    t: u32,
    c1: u32,
    alpha: f64,
    variant: LowerBoundVariant,
) -> Result<Instance> {
    let forward = lowerbound_coordinates(n, t, c1)?;
    let mut pairs: Vec<(u64, BigInt, BigInt)> = Vec::new();
    let reversed = |pairs: &mut Vec<(u64, BigInt, BigInt)>, shift: &BigInt, base: u64| {
        for (i, (s, r)) in forward.iter().enumerate() {
            pairs.push((base + i as u64 + 1, r + shift, s + shift));
        }
    };
    match variant {
        LowerBoundVariant::Forward => {
            pairs.extend(forward.iter().enumerate().map(|(i, (s, r))| (i as u64 + 1, s.clone(), r.clone())));
        }
        LowerBoundVariant::Reversed => reversed(&mut pairs, &BigInt::from(0), 0),
        LowerBoundVariant::Combined => {
            pairs.extend(forward.iter().enumerate().map(|(i, (s, r))| (i as u64 + 1, s.clone(), r.clone())));
            let e = (t as u64).checked_pow(n as u32 + c1 + 1).filter(|&e| e <= 1 << 26).ok_or_else(
                || SinrError::Validation("combined separation is too large".into()),
            )?;
            reversed(&mut pairs, &(BigInt::one() << e), n as u64);
        }
    }
    let fits_float = pairs.iter().all(|(_, s, r)| {
        [s, r].iter().all(|x| x.to_f64().is_some_and(|f| f.abs() <= (1u64 << 53) as f64))
    });
    let (precision, links) = if fits_float {
        let to_point = |x: &BigInt| Point::real([x.to_f64().expect("checked range")]);
        (
            Precision::Float,
            pairs.iter().map(|(id, s, r)| Link::new(*id, to_point(s), to_point(r))).collect(),
        )
    } else {
        (
            Precision::Log2,
            pairs.into_iter().map(|(id, s, r)| Link::new(id, Point::Int(s), Point::Int(r))).collect(),
        )
    };
    let params = InstanceParams { alpha, beta: 1.0, dim: 1, packing_constant: 1.0, ..Default::default() };
    params.build(links, precision)
}
