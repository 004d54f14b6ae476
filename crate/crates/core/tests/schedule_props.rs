mod common;

use common::{planar, rng};
use rand::seq::SliceRandom;
use rand::Rng;
use sinrsched_core::graphs::{build_h, measured_inductiveness, well_separated_classes, LinkGraph};
use sinrsched_core::oracle::{opt_capacity, opt_schedule, opt_weighted_capacity, Feasibility, OracleBudget};
use sinrsched_core::schedule::*;
use sinrsched_core::sinr::{is_sinr_feasible, pc_feasible};
use sinrsched_core::{Instance, Mode};

fn pc_test<'a>(inst: &'a Instance, g: &LinkGraph) -> impl Fn(&[usize]) -> bool + 'a {
    let g = g.clone();
    move |local: &[usize]| {
        let links: Vec<usize> = local.iter().map(|&i| g.link(i)).collect();
        links.is_empty() || pc_feasible(inst, &links).unwrap_or(false)
    }
}

fn length_order(inst: &Instance, class: &[usize]) -> Vec<usize> {
    inst.by_length(class)
        .into_iter()
        .map(|v| class.iter().position(|&c| c == v).unwrap())
        .collect()
}

#[test]
fn every_scheduler_emits_verified_partitions() {
    let mut r = rng(20);
    for _ in 0..60 {
        let alpha = r.random_range(2.2..5.0);
        let beta = r.random_range(0.5..30.0);
        let mode = if r.random_bool(0.4) { Mode::Bidirectional } else { Mode::Unidirectional };
        let n = r.random_range(1..40);
        let inst = planar(&mut r, n, 300.0, 1.0, 200.0, alpha, beta, mode);
        let all = inst.all();
        let mut stream = all.clone();
        stream.shuffle(&mut r);
        let schedules = [
            schedule_meanpower(&inst, &all).unwrap(),
            schedule_lengthgroups_uniform(&inst, &all).unwrap(),
            online_schedule(&inst, &stream).unwrap(),
        ];
        for s in &schedules {
            s.verify(&inst).unwrap();
            assert!(s.covers(&all));
            assert!(s.slots.iter().all(|slot| !slot.is_empty()));
        }
        for c in [
            capacity_meanpower(&inst, &all).unwrap(),
            weighted_capacity_meanpower(&inst, &all).unwrap(),
            capacity_random_group(&inst, &all, r.random()).unwrap(),
        ] {
            assert!(is_sinr_feasible(&inst, &c.power, &c.chosen).unwrap());
            assert!(!c.chosen.is_empty());
        }
        let eq = planar(&mut r, n, 100.0, 1.0, 1.9, alpha, beta, mode);
        let eq_all = eq.all();
        for p in [beta, 2.0 * beta] {
            let s = schedule_equilength_udg(&eq, &eq_all, p).unwrap();
            assert!(s.covers(&eq_all));
            let st = strengthen_schedule(&eq, &s, 2.0 * p).unwrap();
            assert!(st.schedule.covers(&eq_all));
            assert_eq!(st.blowup.len(), s.slot_count());
        }
        for c in [capacity_equilength(&eq, &eq_all).unwrap(), weighted_capacity_equilength(&eq, &eq_all).unwrap()] {
            assert!(is_sinr_feasible(&eq, &c.power, &c.chosen).unwrap());
        }
    }
}

#[test]
fn equilength_precondition_is_enforced() {
    let mut r = rng(21);
    let inst = planar(&mut r, 5, 100.0, 1.0, 1.0, 3.0, 1.0, Mode::Unidirectional);
    let mut long = inst.clone();
    long.links[0].receiver = sinrsched_core::Point::real(
        long.links[0].sender.to_f64s().iter().map(|x| x + 3.0).collect::<Vec<_>>(),
    );
    assert!(schedule_equilength_udg(&long, &long.all(), 1.0).is_err());
    assert!(capacity_equilength(&long, &long.all()).is_err());
    assert!(schedule_equilength_udg(&inst, &[], 1.0).unwrap().slots.is_empty());
}

#[test]
fn measured_inductiveness_bounds_hold() {
    let mut r = rng(22);
    let budget = OracleBudget::default();
    let mut classes_checked = 0;
    for _ in 0..40 {
        let alpha = r.random_range(2.2..4.0);
        let n = r.random_range(3..=10);
        let beta = r.random_range(1.0..10.0);
        let inst = planar(&mut r, n, 30.0, 1.0, 50.0, alpha, beta, Mode::Unidirectional);
        let part = well_separated_classes(&inst, &inst.all()).unwrap();
        for (_, class) in part.nonempty() {
            let h = build_h(&inst, class, &part).unwrap();
            let order = length_order(&inst, class);
            let pi = pc_test(&inst, &h);
            let k = measured_inductiveness(&h, &order, &pi).unwrap();
            assert!(k >= 1);

            let greedy = greedy_pi_subset(&order, &h);
            let opt = opt_capacity(&inst, class, &Feasibility::PowerControl, &budget).unwrap();
            assert!(opt.chosen.len() <= k * greedy.len());

            let weights: Vec<f64> = class.iter().map(|&v| inst.links[v].weight).collect();
            let stack = stack_weighted_pi_subset(&order, &h, &weights, &pi).unwrap();
            assert!(stack.chosen_weight + 1e-9 >= stack.stack_residual_weight);
            let wopt = opt_weighted_capacity(&inst, class, &Feasibility::PowerControl, &budget).unwrap();
            assert!(wopt.value <= k as f64 * stack.chosen_weight + 1e-9);

            let parts = firstfit_partition(&order, &h);
            let oslots = opt_schedule(&inst, class, &Feasibility::PowerControl, &budget).unwrap();
            assert!(parts.len() <= k * oslots.len());
            classes_checked += 1;
        }
    }
    assert!(classes_checked >= 40);
}

#[test]
fn online_assignments_ignore_the_future() {
    let mut r = rng(23);
    for _ in 0..50 {
        let n = r.random_range(2..50);
        let inst = planar(&mut r, n, 200.0, 1.0, 40.0, 3.0, 2.0, Mode::Unidirectional);
        let mut stream = inst.all();
        stream.shuffle(&mut r);
        let cut = r.random_range(1..=n);
        let mut full = OnlineScheduler::new(&inst).unwrap();
        let mut prefix = OnlineScheduler::new(&inst).unwrap();
        let a: Vec<usize> = stream.iter().map(|&v| full.push(v).unwrap()).collect();
        let b: Vec<usize> = stream[..cut].iter().map(|&v| prefix.push(v).unwrap()).collect();
        assert_eq!(&a[..cut], &b[..]);
        let full_s = full.schedule();
        let prefix_s = prefix.schedule();
        for (k, slot) in prefix_s.slots.iter().enumerate() {
            assert_eq!(&full_s.slots[k][..slot.len()], &slot[..]);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let mut r = rng(24);
    let inst = planar(&mut r, 40, 300.0, 1.0, 100.0, 3.0, 2.0, Mode::Unidirectional);
    let all = inst.all();
    assert_eq!(schedule_meanpower(&inst, &all).unwrap(), schedule_meanpower(&inst, &all).unwrap());
    assert_eq!(
        weighted_capacity_meanpower(&inst, &all).unwrap(),
        weighted_capacity_meanpower(&inst, &all).unwrap()
    );
    assert_eq!(capacity_random_group(&inst, &all, 9).unwrap(), capacity_random_group(&inst, &all, 9).unwrap());
    let seeds: std::collections::BTreeSet<Vec<usize>> =
        (0..40).map(|s| capacity_random_group(&inst, &all, s).unwrap().chosen).collect();
    assert!(seeds.len() > 1);
}

#[test]
fn strengthening_to_the_same_level_is_identity() {
    let mut r = rng(25);
    let inst = planar(&mut r, 30, 100.0, 1.0, 1.9, 3.0, 1.0, Mode::Unidirectional);
    let s = schedule_equilength_udg(&inst, &inst.all(), 1.0).unwrap();
    let st = strengthen_schedule(&inst, &s, 1.0).unwrap();
    assert_eq!(st.schedule.slots, s.slots);
    assert!(st.blowup.iter().all(|&b| b == 1));
    assert!(strengthen_schedule(&inst, &s, 0.5).is_err());
}
