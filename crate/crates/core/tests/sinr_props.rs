mod common;

use common::{planar, power, random_subset, rel_close, rng, subsets};
use proptest::prelude::*;
use rand::Rng;
use sinrsched_core::sinr::{
    affectance_pair, affectance_pair_log, affectance_set, is_p_signal, is_sinr_feasible, pc_feasible,
};
use sinrsched_core::{FadingParams, Instance, Link, MetricSpec, Mode, Point, PowerAssignment, Precision};

#[test]
fn mean_power_is_symmetric_under_equal_cross_distances() {
    let mut r = rng(1);
    for _ in 0..200 {
        let alpha = r.random_range(2.1..5.0);
        let inst = planar(&mut r, 2, 50.0, 0.5, 20.0, alpha, 1.0, Mode::Bidirectional);
        let mean = PowerAssignment::mean(alpha);
        let a = affectance_pair(&inst, &mean, 0, 1).unwrap();
        let b = affectance_pair(&inst, &mean, 1, 0).unwrap();
        assert!(rel_close(a, b, 1e-12), "{a} vs {b}");
    }
}

#[test]
fn non_mean_power_breaks_symmetry() {
    let f = FadingParams::new(3.0, MetricSpec::plane()).unwrap();
    let links = vec![
        Link::new(0, Point::real([0.0, 0.0]), Point::real([1.0, 0.0])),
        Link::new(1, Point::real([10.0, 0.0]), Point::real([14.0, 0.0])),
    ];
    let inst = Instance::new(f, 1.0, links).unwrap().with_mode(Mode::Bidirectional);
    for gamma in [0.0, 1.0, 3.0] {
        let p = PowerAssignment::new(gamma, 0.0, 1.0).unwrap();
        let a = affectance_pair(&inst, &p, 0, 1).unwrap();
        let b = affectance_pair(&inst, &p, 1, 0).unwrap();
        assert!(!rel_close(a, b, 1e-6), "gamma {gamma}: {a} == {b}");
    }
    let m = PowerAssignment::mean(3.0);
    assert!(rel_close(
        affectance_pair(&inst, &m, 0, 1).unwrap(),
        affectance_pair(&inst, &m, 1, 0).unwrap(),
        1e-12
    ));
}

#[test]
fn sinr_condition_matches_signal_set_at_beta() {
    let mut r = rng(2);
    let mut agree_true = 0;
    for _ in 0..1000 {
        let alpha = r.random_range(2.2..5.0);
        let beta = r.random_range(0.5..20.0);
        let n = r.random_range(1..12);
        let mode = if r.random_bool(0.3) { Mode::Bidirectional } else { Mode::Unidirectional };
        let inst = planar(&mut r, n, 100.0, 1.5, 15.0, alpha, beta, mode);
        let p = power(&mut r, alpha, true);
        let set = random_subset(&mut r, n);
        let sinr = is_sinr_feasible(&inst, &p, &set).unwrap();
        let signal = is_p_signal(&inst, &p, &set, beta).unwrap();
        assert_eq!(sinr, signal);
        agree_true += sinr as usize;
    }
    assert!(agree_true > 100 && agree_true < 900, "{agree_true}");
}

#[test]
fn power_scale_leaves_affectance_unchanged() {
    let mut r = rng(3);
    for _ in 0..300 {
        let alpha = r.random_range(2.2..5.0);
        let inst = planar(&mut r, 8, 60.0, 1.5, 10.0, alpha, 2.0, Mode::Unidirectional);
        let p = power(&mut r, alpha, true);
        let k = 2f64.powi(r.random_range(-20..20)) * r.random_range(1.0..2.0);
        let q = p.scaled(k);
        let set = inst.all();
        for v in 0..inst.len() {
            let a = affectance_set(&inst, &p, &set, v).unwrap();
            let b = affectance_set(&inst, &q, &set, v).unwrap();
            assert!(rel_close(a, b, 1e-12));
        }
        let sub = random_subset(&mut r, inst.len());
        assert_eq!(is_sinr_feasible(&inst, &p, &sub).unwrap(), is_sinr_feasible(&inst, &q, &sub).unwrap());
        for pl in [1.0, 2.0, 5.0] {
            assert_eq!(is_p_signal(&inst, &p, &sub, pl).unwrap(), is_p_signal(&inst, &q, &sub, pl).unwrap());
        }
    }
}

#[test]
fn signal_sets_are_pairwise_independent() {
    let mut r = rng(4);
    let mut checked = 0;
    for _ in 0..60 {
        let alpha = r.random_range(2.2..5.0);
        let beta = r.random_range(1.0..5.0);
        let mode = if r.random_bool(0.5) { Mode::Bidirectional } else { Mode::Unidirectional };
        let inst = planar(&mut r, 8, 40.0, 1.5, 8.0, alpha, beta, mode);
        let p = power(&mut r, alpha, true);
        for pl in [1.0, beta, 2.0 * beta] {
            for set in subsets(inst.len()) {
                if set.len() < 2 || !is_p_signal(&inst, &p, &set, pl).unwrap() {
                    continue;
                }
                checked += 1;
                for (i, &v) in set.iter().enumerate() {
                    for &w in &set[i + 1..] {
                        let dd = inst.link_distance(v, w).to_f64() * inst.link_distance(w, v).to_f64();
                        let need = pl.powf(2.0 / alpha) * inst.length_f64(v) * inst.length_f64(w);
                        assert!(dd >= need * (1.0 - 1e-9), "{dd} < {need}");
                    }
                }
            }
        }
    }
    assert!(checked > 500, "{checked}");
}

fn line_instance(coords: &[(i64, i64)], alpha: f64, precision: Precision) -> Instance {
    let f = FadingParams::new(alpha, MetricSpec::new(1, 1.0).unwrap()).unwrap();
    let links = coords
        .iter()
        .enumerate()
        .map(|(i, &(s, r))| match precision {
            Precision::Float => Link::new(i as u64, Point::real([s as f64]), Point::real([r as f64])),
            Precision::Log2 => Link::new(i as u64, Point::int(s), Point::int(r)),
        })
        .collect();
    let mut inst = Instance::new(f, 1.0, vec![]).unwrap();
    inst.links = links;
    inst.precision = precision;
    inst.validate().unwrap();
    inst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_and_float_affectance_agree(
        raw in prop::collection::vec((-1_000_000i64..1_000_000, 2i64..50_000), 2..8),
        alpha in 1.2f64..5.0,
        gamma_frac in 0.0f64..1.0,
        lg in any::<bool>(),
    ) {
        let coords: Vec<(i64, i64)> = raw.iter().map(|&(s, l)| (s, s + l)).collect();
        let fl = line_instance(&coords, alpha, Precision::Float);
        let lg_inst = line_instance(&coords, alpha, Precision::Log2);
        let p = PowerAssignment::new(gamma_frac * alpha, if lg { 1.0 } else { 0.0 }, 1.0).unwrap();
        for w in 0..fl.len() {
            for v in 0..fl.len() {
                if v == w {
                    continue;
                }
                match affectance_pair(&fl, &p, w, v) {
                    Ok(a) => {
                        let b = affectance_pair_log(&lg_inst, &p, w, v).unwrap().to_f64();
                        prop_assert!(rel_close(a, b, 1e-6), "{} vs {}", a, b);
                    }
                    Err(_) => prop_assert!(affectance_pair_log(&lg_inst, &p, w, v).is_err()),
                }
            }
        }
        let set = fl.all();
        for v in 0..fl.len() {
            if let (Ok(a), Ok(b)) = (affectance_set(&fl, &p, &set, v), affectance_set(&lg_inst, &p, &set, v)) {
                prop_assert!(rel_close(a, b, 1e-6));
            }
        }
    }

    #[test]
    fn power_control_is_no_harder_than_any_oblivious_power(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alpha = r.random_range(2.2..5.0);
        let beta = r.random_range(0.5..4.0);
        let inst = planar(&mut r, 6, 30.0, 1.5, 8.0, alpha, beta, Mode::Unidirectional);
        let p = power(&mut r, alpha, true);
        let set = random_subset(&mut r, inst.len());
        if !set.is_empty() && is_sinr_feasible(&inst, &p, &set).unwrap() {
            prop_assert!(pc_feasible(&inst, &set).unwrap());
        }
    }
}
