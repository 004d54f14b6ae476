//! Mean-power (`P = l^{alpha/2}`) algorithms over well-separated classes.

use super::inductive::{firstfit_partition, greedy_pi_subset, stack_weighted_pi_subset};
use super::{CapacityResult, Schedule};
use crate::error::{Result, SinrError};
use crate::graphs::{build_h, well_separated_classes, ClassPartition, LinkGraph};
use crate::instance::{Instance, PowerAssignment};
use crate::sinr::is_p_signal;

/// Signal level `2^{alpha/2} beta` used when building same-band edges, for
/// callers that want to schedule with headroom against cross-band
/// interference.
pub fn meanpower_headroom(inst: &Instance) -> f64 {
    2f64.powf(inst.alpha() / 2.0) * inst.beta
}

/// H graph of each nonempty class together with its length order.
fn class_graphs(inst: &Instance, set: &[usize]) -> Result<Vec<(LinkGraph, Vec<usize>)>> {
    let part: ClassPartition = well_separated_classes(inst, set)?;
    part.nonempty()
        .map(|(_, class)| {
            let h = build_h(inst, class, &part)?;
            let local: std::collections::HashMap<usize, usize> =
                class.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let order = inst.by_length(class).into_iter().map(|v| local[&v]).collect();
            Ok((h, order))
        })
        .collect()
}

/// Schedules each well-separated class by first-fit over the reverse length
/// order of its H graph. Slots are `beta`-signal sets under mean power.
pub fn schedule_meanpower(inst: &Instance, set: &[usize]) -> Result<Schedule> {
    let mut slots = Vec::new();
    for (h, order) in class_graphs(inst, set)? {
        for c in firstfit_partition(&order, &h) {
            slots.push(c.into_iter().map(|i| h.link(i)).collect());
        }
    }
    let schedule = Schedule {
        slots,
        power: PowerAssignment::mean(inst.alpha()),
        mode: inst.mode,
        p_certified: inst.beta,
    };
    schedule.verify(inst)?;
    Ok(schedule)
}

fn best_of(inst: &Instance, candidates: Vec<Vec<usize>>, by_weight: bool) -> CapacityResult {
    let mean = PowerAssignment::mean(inst.alpha());
    candidates
        .into_iter()
        .map(|c| CapacityResult::new(inst, c, mean))
        .reduce(|best, c| {
            let better = if by_weight {
                c.total_weight > best.total_weight
            } else {
                c.size() > best.size()
            };
            if better {
                c
            } else {
                best
            }
        })
        .unwrap_or_else(|| CapacityResult::new(inst, Vec::new(), mean))
}

/// Greedy pass along the length order of each class; returns the largest.
pub fn capacity_meanpower(inst: &Instance, set: &[usize]) -> Result<CapacityResult> {
    let candidates = class_graphs(inst, set)?
        .into_iter()
        .map(|(h, order)| greedy_pi_subset(&order, &h).into_iter().map(|i| h.link(i)).collect())
        .collect();
    let result = best_of(inst, candidates, false);
    result.verify(inst)?;
    Ok(result)
}

/// Stack algorithm per class with SINR feasibility under mean power as the
/// property; returns the heaviest class solution.
pub fn weighted_capacity_meanpower(inst: &Instance, set: &[usize]) -> Result<CapacityResult> {
    let mean = PowerAssignment::mean(inst.alpha());
    let mut candidates = Vec::new();
    for (h, order) in class_graphs(inst, set)? {
        let weights: Vec<f64> = h.links().iter().map(|&v| inst.links[v].weight).collect();
        let mut failure = None;
        let outcome = stack_weighted_pi_subset(&order, &h, &weights, |local| {
            let links: Vec<usize> = local.iter().map(|&i| h.link(i)).collect();
            is_p_signal(inst, &mean, &links, inst.beta).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                false
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let outcome = outcome.map_err(|e| SinrError::Internal(e.to_string()))?;
        candidates.push(outcome.chosen.into_iter().map(|i| h.link(i)).collect());
    }
    let result = best_of(inst, candidates, true);
    result.verify(inst)?;
    Ok(result)
}
