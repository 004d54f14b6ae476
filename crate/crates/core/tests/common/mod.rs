#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinrsched_core::{FadingParams, Instance, Link, MetricSpec, Mode, Point, PowerAssignment};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Planar instance with senders uniform in a square and log-uniform lengths.
#[allow(clippy::too_many_arguments)]
pub fn planar(
    rng: &mut impl Rng,
    n: usize,
    side: f64,
    len_lo: f64,
    len_hi: f64,
    alpha: f64,
    beta: f64,
    mode: Mode,
) -> Instance {
    let links = (0..n)
        .map(|i| {
            let s = [rng.random_range(0.0..side), rng.random_range(0.0..side)];
            let len = if len_lo == len_hi {
                len_lo
            } else {
                (rng.random_range(len_lo.ln()..len_hi.ln())).exp()
            };
            let th = rng.random_range(0.0..std::f64::consts::TAU);
            let r = [s[0] + len * th.cos(), s[1] + len * th.sin()];
            Link::new(i as u64, Point::real(s), Point::real(r)).with_weight(rng.random_range(0.1..10.0))
        })
        .collect();
    Instance::new(FadingParams::new(alpha, MetricSpec::plane()).unwrap(), beta, links)
        .unwrap()
        .with_mode(mode)
}

/// A random oblivious power assignment; the `lg` factor only when every
/// length exceeds 1.
pub fn power(rng: &mut impl Rng, alpha: f64, allow_lg: bool) -> PowerAssignment {
    let gamma = rng.random_range(0.0..=alpha);
    let delta = if allow_lg { [-1.0, 0.0, 1.0][rng.random_range(0..3)] } else { 0.0 };
    PowerAssignment::new(gamma, delta, rng.random_range(0.5..4.0)).unwrap()
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

pub fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
