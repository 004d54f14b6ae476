//! Fixed instances shared by the benchmarks.

use sinrsched_core::gen::{gen_equilength, gen_random, InstanceParams};
use sinrsched_core::Instance;

/// Random planar instance with lengths in `[1, 100]` and `beta = 2`.
pub fn planar(n: usize, seed: u64) -> Instance {
    let params = InstanceParams { beta: 2.0, ..Default::default() };
    let side = 40.0 * (n as f64).sqrt();
    gen_random(n, side.max(100.0), 1.0, 100.0, seed, &params).expect("valid parameters")
}

/// Nearly-equilength planar instance at constant density.
pub fn equilength(n: usize, seed: u64) -> Instance {
    let params = InstanceParams { beta: 2.0, ..Default::default() };
    gen_equilength(n, 12.0 * (n as f64).sqrt(), 1.0, seed, &params).expect("valid parameters")
}
