mod common;

use common::{planar, rng, subsets};
use rand::Rng;
use sinrsched_core::graphs::{
    build_gq, build_uz, is_q_independent, separation_params, t_close, LinkGraph,
};
use sinrsched_core::metric::{udg_independence_bound, z1, z2};
use sinrsched_core::oracle::independence_number;
use sinrsched_core::sinr::{is_p_signal, max_affectance};
use sinrsched_core::{Instance, Mode, PowerAssignment};

fn subset_of(small: &LinkGraph, big: &LinkGraph) -> bool {
    small.edges().iter().all(|&(i, j)| big.has_edge(i, j))
}

fn sandwich_violations(mode: Mode, upper: impl Fn(f64) -> f64) -> usize {
    let mut r = rng(10);
    let mut bad = 0;
    for _ in 0..500 {
        let n = r.random_range(2..=60);
        let alpha = r.random_range(2.2..5.0);
        let d = r.random_range(0.5..3.0);
        let inst = planar(&mut r, n, 40.0 * d, d, 1.99 * d, alpha, 1.0, mode);
        let set = inst.all();
        for q in [2.0, 3.0, 4.0] {
            let gq = build_gq(&inst, &set, q).unwrap();
            let lo = build_uz(&inst, &set, q - 1.0).unwrap();
            let hi = build_uz(&inst, &set, upper(q)).unwrap();
            bad += !subset_of(&lo, &gq) as usize + !subset_of(&gq, &hi) as usize;
        }
    }
    bad
}

#[test]
fn unit_disc_graphs_sandwich_link_graphs() {
    assert_eq!(sandwich_violations(Mode::Unidirectional, |q| 2.0 * (q + 1.0)), 0);
}

#[test]
fn bidirectional_sandwich_needs_two_more_lengths() {
    // receiver-to-receiver distances add a second link length to the
    // triangle inequality on senders
    assert!(sandwich_violations(Mode::Bidirectional, |q| 2.0 * (q + 1.0)) > 0);
    assert_eq!(sandwich_violations(Mode::Bidirectional, |q| 2.0 * (q + 2.0)), 0);
}

#[test]
fn udg_neighborhoods_have_bounded_independence() {
    let mut r = rng(11);
    for _ in 0..100 {
        let alpha = r.random_range(2.2..5.0);
        let inst = planar(&mut r, 80, 30.0, 1.0, 1.9, alpha, 1.0, Mode::Unidirectional);
        let p = r.random_range(1.0..30.0);
        let pairs = [(z1(p, &inst.fading).unwrap(), z2(p, alpha).unwrap()), (4.0, 2.0)];
        for (a, b) in pairs {
            if b <= 0.0 {
                continue;
            }
            let set = inst.all();
            let ua = build_uz(&inst, &set, a).unwrap();
            let v = r.random_range(0..inst.len());
            let mut hood: Vec<usize> = ua.neighbors(v).to_vec();
            hood.push(v);
            hood.sort_unstable();
            let sub: Vec<usize> = hood.iter().map(|&i| set[i]).collect();
            // U_b on the neighborhood must use the minimum length of the whole set
            let dmin = (0..inst.len()).map(|w| inst.length_f64(w)).fold(f64::INFINITY, f64::min);
            let ub = LinkGraph::from_predicate(sub.clone(), sinrsched_core::graphs::GraphLabel::Custom, |i, j| {
                inst.sender_distance(sub[i], sub[j]).to_f64() < b * dmin
            });
            let alpha_b = independence_number(&ub).unwrap();
            let bound = udg_independence_bound(a, b, &inst.fading.metric);
            assert!(alpha_b as f64 <= bound, "{alpha_b} > {bound} at a={a}, b={b}");
        }
    }
}

#[test]
fn udg_independent_sets_are_signal_sets_and_back() {
    let mut r = rng(12);
    for _ in 0..40 {
        let alpha = r.random_range(2.5..5.0);
        let p = r.random_range(1.0..10.0);
        let n = r.random_range(6..=10);
        let zs = z1(p, &inst_fading(alpha)).unwrap();
        let inst = planar(&mut r, n, 3.0 * zs, 1.0, 1.9, alpha, 1.0, Mode::Unidirectional);
        let set = inst.all();
        let u1 = build_uz(&inst, &set, z1(p, &inst.fading).unwrap()).unwrap();
        let u2 = build_uz(&inst, &set, z2(p, alpha).unwrap()).unwrap();
        let uniform = PowerAssignment::uniform();
        for s in subsets(n) {
            let signal = is_p_signal(&inst, &uniform, &s, p).unwrap();
            if u1.is_independent(&s) {
                assert!(signal, "U_z1-independent set {s:?} is not a {p}-signal set");
            }
            if signal {
                assert!(u2.is_independent(&s), "{p}-signal set {s:?} has a U_z2 edge");
            }
        }
    }
}

fn inst_fading(alpha: f64) -> sinrsched_core::FadingParams {
    sinrsched_core::FadingParams::new(alpha, sinrsched_core::MetricSpec::plane()).unwrap()
}

#[test]
fn far_away_senders_give_signal_sets() {
    let mut r = rng(13);
    for _ in 0..50 {
        let alpha = r.random_range(2.2..5.0);
        let p = r.random_range(1.0..40.0);
        let dmax = r.random_range(1.0..10.0);
        let z = z1(p, &inst_fading(alpha)).unwrap();
        let params = sinrsched_core::gen::InstanceParams { alpha, ..Default::default() };
        let inst = sinrsched_core::gen::gen_dispersed(60, dmax / 8.0, dmax, z * dmax / 2.0, r.random(), &params)
            .unwrap();
        let a = max_affectance(&inst, &PowerAssignment::uniform(), &inst.all());
        assert!(a <= 1.0 / p, "max affectance {a} > 1/{p}");
    }
}

fn log_uniform_instance(r: &mut impl Rng, n: usize, alpha: f64, mode: Mode) -> Instance {
    planar(r, n, 2000.0, 1.0, 1e6, alpha, 1.0, mode)
}

#[test]
fn few_long_links_are_close_to_a_short_one() {
    let mut r = rng(14);
    let mut nonempty = 0;
    for _ in 0..300 {
        let alpha = r.random_range(2.2..4.0);
        let inst = log_uniform_instance(&mut r, 12, alpha, Mode::Unidirectional);
        let (tau, lambda_sep, _) = separation_params(&inst);
        let lg_delta = inst.log2_delta(&inst.all());
        let bound = lg_delta.log2() + 2.0;
        for v in 0..inst.len() {
            let cands: Vec<usize> = (0..inst.len())
                .filter(|&w| {
                    inst.length_f64(w) > lambda_sep * inst.length_f64(v) && t_close(&inst, v, w, 1.0 / tau)
                })
                .collect();
            nonempty += !cands.is_empty() as usize;
            for mask in subsets(cands.len()) {
                let q: Vec<usize> = mask.iter().map(|&i| cands[i]).collect();
                let independent = q
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| q[i + 1..].iter().all(|&b| is_q_independent(&inst, a, b, 3.0)));
                if independent {
                    assert!(q.len() as f64 <= bound, "|Q| = {} > {bound}", q.len());
                }
            }
        }
    }
    assert!(nonempty > 50, "{nonempty}");
}

#[test]
fn bidirectional_probe_has_one_long_close_link() {
    let mut r = rng(15);
    let mut probes = 0;
    for _ in 0..300 {
        let alpha = r.random_range(2.2..4.0);
        let inst = log_uniform_instance(&mut r, 12, alpha, Mode::Bidirectional);
        let (tau, _, _) = separation_params(&inst);
        let factor = tau.powf(2.0 / alpha);
        for v in 0..inst.len() {
            let long: Vec<usize> = (0..inst.len())
                .filter(|&w| {
                    inst.length_f64(w) > factor * inst.length_f64(v) && t_close(&inst, v, w, 1.0 / tau)
                })
                .collect();
            probes += (long.len() >= 2) as usize;
            for (i, &a) in long.iter().enumerate() {
                for &b in &long[i + 1..] {
                    assert!(!is_q_independent(&inst, a, b, 2.0), "links {a} and {b} both qualify");
                }
            }
        }
    }
    assert!(probes > 10, "{probes}");
}
