use sinrsched_core::gen::{gen_lowerbound, LowerBoundVariant};
use sinrsched_core::sinr::{affectance_pair_log, affectance_set_log, is_p_signal, is_sinr_feasible};
use sinrsched_core::{Precision, PowerAssignment};

#[test]
fn forward_variant_defeats_mean_power() {
    for alpha in [2.0, 3.0, 4.0] {
        for n in 2..=8 {
            let inst = gen_lowerbound(n, 4, 0, alpha, LowerBoundVariant::Forward).unwrap();
            let mean = PowerAssignment::mean(alpha);
            for i in 0..n {
                for j in 0..i {
                    let a = affectance_pair_log(&inst, &mean, j, i).unwrap();
                    assert!(a.log2mag >= 0.0, "a_{j}({i}) < 1 at alpha {alpha}, n {n}");
                    assert!(!is_sinr_feasible(&inst, &mean, &[j, i]).unwrap());
                }
            }
        }
    }
}

#[test]
fn psi_power_keeps_affectance_below_one_for_alpha_three() {
    let inst = gen_lowerbound(8, 4, 0, 3.0, LowerBoundVariant::Forward).unwrap();
    assert_eq!(inst.precision, Precision::Log2);
    let psi = PowerAssignment::psi(3.0);
    let all = inst.all();
    for v in 0..inst.len() {
        assert!(affectance_set_log(&inst, &psi, &all, v).unwrap().to_f64() <= 1.0);
    }
    assert!(is_p_signal(&inst, &psi, &all, 1.0).unwrap());
}

#[test]
fn psi_power_bound_needs_larger_alpha_than_two() {
    // At alpha = 2 the nearest shorter link alone contributes t / 2^alpha = 1,
    // so two links sit exactly on the threshold and a third pushes past it.
    let two = gen_lowerbound(2, 4, 0, 2.0, LowerBoundVariant::Forward).unwrap();
    let psi = PowerAssignment::psi(2.0);
    let a = affectance_set_log(&two, &psi, &two.all(), 1).unwrap().to_f64();
    assert!((a - 1.0).abs() < 1e-9, "{a}");
    let three = gen_lowerbound(3, 4, 0, 2.0, LowerBoundVariant::Forward).unwrap();
    let worst = (0..3)
        .map(|v| affectance_set_log(&three, &psi, &three.all(), v).unwrap().to_f64())
        .fold(0.0, f64::max);
    assert!(worst > 1.0, "{worst}");
}

#[test]
fn reversed_variant_is_feasible_under_log_power() {
    for n in 2..=8 {
        let inst = gen_lowerbound(n, 4, 0, 3.0, LowerBoundVariant::Reversed).unwrap();
        assert!(is_sinr_feasible(&inst, &PowerAssignment::logarithmic(), &inst.all()).unwrap());
    }
}

#[test]
fn combined_variant_separates_copies() {
    let inst = gen_lowerbound(4, 4, 0, 3.0, LowerBoundVariant::Combined).unwrap();
    let mean = PowerAssignment::mean(3.0);
    for i in 0..4 {
        for j in 4..8 {
            for (w, v) in [(i, j), (j, i)] {
                assert!(affectance_pair_log(&inst, &mean, w, v).unwrap().to_f64() < 1e-6);
            }
        }
    }
}
