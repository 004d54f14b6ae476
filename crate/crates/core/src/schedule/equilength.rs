//! Uniform-power algorithms for nearly-equilength links and their
//! length-group extensions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::inductive::{first_fit_coloring, greedy_pi_subset};
use super::{CapacityResult, Schedule};
use crate::error::{Result, SinrError};
use crate::graphs::{build_uz, length_groups, sufficient_separation, LinkGraph};
use crate::instance::{Instance, PowerAssignment};
use crate::numeric::Scalar;
use crate::sinr::dispatch;

fn require_equilength(inst: &Instance, set: &[usize]) -> Result<()> {
    let delta = inst.log2_delta(set);
    if delta < 1.0 {
        Ok(())
    } else {
        Err(SinrError::Precondition(format!(
            "links are not nearly equilength: max/min length = 2^{delta:.4}"
        )))
    }
}

fn color_udg(inst: &Instance, set: &[usize], p: f64) -> Result<Vec<Vec<usize>>> {
    if set.is_empty() {
        return Ok(Vec::new());
    }
    let z = sufficient_separation(p, inst)?;
    let g = build_uz(inst, set, z)?;
    Ok(first_fit_coloring(0..set.len(), &g)
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.link(i)).collect())
        .collect())
}

/// First-fit coloring of the unit-disc graph `U_z`, `z` the sufficient
/// separation for `p`, in input order. Each slot is a `p`-signal set under
/// uniform power.
pub fn schedule_equilength_udg(inst: &Instance, set: &[usize], p: f64) -> Result<Schedule> {
    require_equilength(inst, set)?;
    let schedule = Schedule {
        slots: color_udg(inst, set, p)?,
        power: PowerAssignment::uniform(),
        mode: inst.mode,
        p_certified: p,
    };
    schedule.verify(inst)?;
    Ok(schedule)
}

fn udg_for_capacity(inst: &Instance, set: &[usize]) -> Result<Option<LinkGraph>> {
    require_equilength(inst, set)?;
    if set.is_empty() {
        return Ok(None);
    }
    let z = sufficient_separation(inst.beta, inst)?;
    build_uz(inst, set, z).map(Some)
}

/// Maximal independent set of `U_z` at `p = beta`, greedy in input order.
pub fn capacity_equilength(inst: &Instance, set: &[usize]) -> Result<CapacityResult> {
    let chosen = match udg_for_capacity(inst, set)? {
        Some(g) => {
            let order: Vec<usize> = (0..g.n()).collect();
            greedy_pi_subset(&order, &g).into_iter().map(|i| g.link(i)).collect()
        }
        None => Vec::new(),
    };
    let result = CapacityResult::new(inst, chosen, PowerAssignment::uniform());
    result.verify(inst)?;
    Ok(result)
}

/// Repeatedly keeps the heaviest remaining link (ties by id) and discards its
/// `U_z` neighbors.
pub fn weighted_capacity_equilength(inst: &Instance, set: &[usize]) -> Result<CapacityResult> {
    let chosen = match udg_for_capacity(inst, set)? {
        Some(g) => {
            let mut order: Vec<usize> = (0..g.n()).collect();
            order.sort_by(|&a, &b| {
                let (la, lb) = (&inst.links[g.link(a)], &inst.links[g.link(b)]);
                lb.weight.total_cmp(&la.weight).then(la.id.cmp(&lb.id))
            });
            greedy_pi_subset(&order, &g).into_iter().map(|i| g.link(i)).collect()
        }
        None => Vec::new(),
    };
    let result = CapacityResult::new(inst, chosen, PowerAssignment::uniform());
    result.verify(inst)?;
    Ok(result)
}

/// Groups links by `ceil(lg length)` and schedules each group separately at
/// `p = beta`. Uses at most `g(L)` times the per-group slot count.
pub fn schedule_lengthgroups_uniform(inst: &Instance, set: &[usize]) -> Result<Schedule> {
    let mut slots = Vec::new();
    for group in length_groups(inst, set).groups.values() {
        slots.extend(color_udg(inst, group, inst.beta)?);
    }
    let schedule = Schedule {
        slots,
        power: PowerAssignment::uniform(),
        mode: inst.mode,
        p_certified: inst.beta,
    };
    schedule.verify(inst)?;
    Ok(schedule)
}

/// Picks one length group uniformly at random and solves capacity on it.
pub fn capacity_random_group(inst: &Instance, set: &[usize], seed: u64) -> Result<CapacityResult> {
    let groups = length_groups(inst, set);
    if groups.diversity() == 0 {
        return Ok(CapacityResult::new(inst, Vec::new(), PowerAssignment::uniform()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = rng.random_range(0..groups.diversity());
    let group = groups.groups.values().nth(pick).expect("index within diversity");
    capacity_equilength(inst, group)
}

#[derive(Debug, Clone)]
struct OnlineSlot {
    band: i64,
    members: Vec<usize>,
}

/// Irrevocable online scheduler: an arriving link joins the first slot of its
/// length group whose senders all lie at least `z * 2^{k-1}` away, `k` the
/// group key. Decisions never depend on later arrivals.
#[derive(Debug, Clone)]
pub struct OnlineScheduler<'a> {
    inst: &'a Instance,
    z: f64,
    slots: Vec<OnlineSlot>,
    assigned: Vec<Option<usize>>,
}

fn far_from_all<T: Scalar>(inst: &Instance, v: usize, members: &[usize], radius: T) -> bool {
    members
        .iter()
        .all(|&w| T::from_measure(&inst.sender_distance(v, w)) >= radius)
}

fn group_radius<T: Scalar>(z: f64, band: i64) -> T {
    T::from_f64(z) * T::from_f64(2.0).powf((band - 1) as f64)
}

fn fits<T: Scalar>(inst: &Instance, v: usize, z: f64, slot: &OnlineSlot) -> bool {
    far_from_all::<T>(inst, v, &slot.members, group_radius::<T>(z, slot.band))
}

impl<'a> OnlineScheduler<'a> {
    /// Scheduler whose slots are `beta`-signal sets under uniform power.
    pub fn new(inst: &'a Instance) -> Result<Self> {
        let z = sufficient_separation(inst.beta, inst)?;
        Ok(Self { inst, z, slots: Vec::new(), assigned: vec![None; inst.len()] })
    }

    /// Assigns an arriving link and returns its slot index.
    pub fn push(&mut self, v: usize) -> Result<usize> {
        let inst = self.inst;
        if v >= inst.len() {
            return Err(SinrError::Precondition(format!("unknown link index {v}")));
        }
        if self.assigned[v].is_some() {
            return Err(SinrError::Precondition(format!(
                "link {} arrived twice",
                inst.links[v].id
            )));
        }
        let band = inst.band(v);
        let z = self.z;
        let slot = self
            .slots
            .iter()
            .position(|s| s.band == band && dispatch!(inst, fits(inst, v, z, s)));
        let k = match slot {
            Some(k) => k,
            None => {
                self.slots.push(OnlineSlot { band, members: Vec::new() });
                self.slots.len() - 1
            }
        };
        self.slots[k].members.push(v);
        self.assigned[v] = Some(k);
        Ok(k)
    }

    pub fn slot_of(&self, v: usize) -> Option<usize> {
        self.assigned.get(v).copied().flatten()
    }

    pub fn schedule(&self) -> Schedule {
        Schedule {
            slots: self.slots.iter().map(|s| s.members.clone()).collect(),
            power: PowerAssignment::uniform(),
            mode: self.inst.mode,
            p_certified: self.inst.beta,
        }
    }
}

/// Runs [`OnlineScheduler`] over `stream` in arrival order.
pub fn online_schedule(inst: &Instance, stream: &[usize]) -> Result<Schedule> {
    let mut online = OnlineScheduler::new(inst)?;
    for &v in stream {
        online.push(v)?;
    }
    let schedule = online.schedule();
    schedule.verify(inst)?;
    Ok(schedule)
}
