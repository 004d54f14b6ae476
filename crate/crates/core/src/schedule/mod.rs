//! Scheduling and capacity algorithms.
//!
//! Every algorithm re-verifies its output before returning it: schedules are
//! checked slot by slot at their certified signal level, capacity results at
//! the SINR threshold. A failed check surfaces as [`SinrError::Internal`].

mod equilength;
mod inductive;
mod meanpower;
mod strengthen;

pub use equilength::{
    capacity_equilength, capacity_random_group, online_schedule, schedule_equilength_udg,
    schedule_lengthgroups_uniform, weighted_capacity_equilength, OnlineScheduler,
};
pub use inductive::{
    first_fit_coloring, firstfit_partition, greedy_pi_subset, stack_weighted_pi_subset,
    StackOutcome,
};
pub use meanpower::{
    capacity_meanpower, meanpower_headroom, schedule_meanpower, weighted_capacity_meanpower,
};
pub use strengthen::{strengthen_schedule, Strengthened};

use std::collections::HashSet;

use crate::error::{Result, SinrError};
use crate::instance::{Instance, Mode, PowerAssignment};
use crate::sinr::{is_p_signal, max_affectance};

/// Ordered partition of links into slots that share one power assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// Instance link indices per slot.
    pub slots: Vec<Vec<usize>>,
    pub power: PowerAssignment,
    pub mode: Mode,
    /// Every slot is a `p_certified`-signal set.
    pub p_certified: f64,
}

impl Schedule {
    pub fn empty(power: PowerAssignment, mode: Mode, p_certified: f64) -> Self {
        Self { slots: Vec::new(), power, mode, p_certified }
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn scheduled(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    /// Slots are disjoint and each is a `p_certified`-signal set.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        let mut seen = HashSet::new();
        for slot in &self.slots {
            for &v in slot {
                if v >= inst.len() {
                    return Err(SinrError::Internal(format!("slot references unknown link index {v}")));
                }
                if !seen.insert(v) {
                    return Err(SinrError::Internal(format!(
                        "link {} appears in two slots",
                        inst.links[v].id
                    )));
                }
            }
            if !is_p_signal(inst, &self.power, slot, self.p_certified)? {
                return Err(SinrError::Internal(format!(
                    "slot {:?} is not a {}-signal set",
                    inst.ids(slot),
                    self.p_certified
                )));
            }
        }
        Ok(())
    }

    /// Whether the slots cover exactly `set`.
    pub fn covers(&self, set: &[usize]) -> bool {
        let mut a: Vec<usize> = self.slots.iter().flatten().copied().collect();
        let mut b = set.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Maximum total affectance inside each slot.
    pub fn slot_max_affectance(&self, inst: &Instance) -> Vec<f64> {
        self.slots.iter().map(|s| max_affectance(inst, &self.power, s)).collect()
    }
}

/// A single feasible subset chosen for capacity maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub chosen: Vec<usize>,
    pub power: PowerAssignment,
    pub total_weight: f64,
}

impl CapacityResult {
    pub(crate) fn new(inst: &Instance, mut chosen: Vec<usize>, power: PowerAssignment) -> Self {
        chosen.sort_unstable();
        let total_weight = chosen.iter().map(|&v| inst.links[v].weight).sum();
        Self { chosen, power, total_weight }
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }

    /// Chosen links form a `beta`-signal set (SINR-feasible without noise).
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        if !is_p_signal(inst, &self.power, &self.chosen, inst.beta)? {
            return Err(SinrError::Internal(format!(
                "capacity set {:?} is not SINR-feasible",
                inst.ids(&self.chosen)
            )));
        }
        Ok(())
    }

    pub fn as_schedule(&self, inst: &Instance) -> Schedule {
        Schedule {
            slots: if self.chosen.is_empty() { vec![] } else { vec![self.chosen.clone()] },
            power: self.power,
            mode: inst.mode,
            p_certified: inst.beta,
        }
    }
}

pub(crate) fn warn_small_beta(inst: &Instance) -> Option<String> {
    let bound = 3f64.powf(inst.alpha());
    (inst.beta < bound).then(|| {
        format!(
            "beta = {} is below 3^alpha = {bound:.3}; approximation ratios assume beta >= 3^alpha",
            inst.beta
        )
    })
}

/// Warnings an algorithm run should surface alongside its output.
pub fn run_warnings(inst: &Instance) -> Vec<String> {
    let mut w = Vec::new();
    w.extend(warn_small_beta(inst));
    if inst.noise > 0.0 {
        w.push(format!(
            "noise = {} is ignored by the schedulers; only the checker honors it",
            inst.noise
        ));
    }
    if inst.fading.fading_margin() < 0.1 {
        w.push(format!(
            "alpha - dim = {:.4}: separation constants blow up as alpha approaches the dimension",
            inst.fading.fading_margin()
        ));
    }
    w
}
