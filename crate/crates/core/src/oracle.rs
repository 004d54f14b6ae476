//! Exhaustive reference solvers for small instances.
//!
//! Feasibility tables enumerate all `2^k` subsets as bitmasks (bit `i` is
//! `set[i]`), pruning any subset with an infeasible one-smaller subset since
//! both feasibility notions are hereditary.

use crate::error::{Result, SinrError};
use crate::graphs::LinkGraph;
use crate::instance::{Instance, PowerAssignment};
use crate::sinr::{is_sinr_feasible, pc_feasible};

/// Largest `k` the oracle ever accepts.
pub const ORACLE_HARD_LIMIT: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleBudget {
    pub max_links: usize,
    pub max_subsets: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_links: 14, max_subsets: 1 << 22 }
    }
}

impl OracleBudget {
    pub fn with_max_links(max_links: usize) -> Result<Self> {
        if max_links > ORACLE_HARD_LIMIT {
            return Err(SinrError::Validation(format!(
                "oracle limit {max_links} exceeds the hard cap {ORACLE_HARD_LIMIT}"
            )));
        }
        Ok(Self { max_links, max_subsets: 1 << ORACLE_HARD_LIMIT })
    }

    fn admit(&self, k: usize) -> Result<()> {
        let limit = self.max_links.min(ORACLE_HARD_LIMIT);
        if k > limit || (1u64 << k.min(63)) > self.max_subsets {
            return Err(SinrError::OracleScale { size: k, limit });
        }
        Ok(())
    }
}

/// Which notion of feasibility the oracle optimizes over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feasibility {
    /// SINR condition (noise included) under a fixed power assignment.
    Fixed(PowerAssignment),
    /// Some power assignment exists, i.e. `rho(beta F) < 1`.
    PowerControl,
}

/// Subset of `set` selected by `mask`.
pub fn mask_members(set: &[usize], mask: u32) -> Vec<usize> {
    set.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

fn test_subset(inst: &Instance, links: &[usize], feas: &Feasibility) -> Result<bool> {
    match feas {
        Feasibility::Fixed(power) => is_sinr_feasible(inst, power, links),
        Feasibility::PowerControl => match pc_feasible(inst, links) {
            Err(SinrError::Colocation(..)) => Ok(false),
            other => other,
        },
    }
}

/// Feasibility of every subset of `set`, indexed by bitmask.
pub fn feasible_subsets(
    inst: &Instance,
    set: &[usize],
    feas: &Feasibility,
    budget: &OracleBudget,
) -> Result<Vec<bool>> {
    let k = set.len();
    budget.admit(k)?;
    if let Feasibility::Fixed(power) = feas {
        power.validate_for(inst)?;
    }
    let mut table = vec![false; 1 << k];
    table[0] = true;
    for mask in 1u32..(1 << k) {
        let mut bits = mask;
        let mut hereditary = true;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if !table[(mask ^ low) as usize] {
                hereditary = false;
                break;
            }
            bits ^= low;
        }
        table[mask as usize] = hereditary && test_subset(inst, &mask_members(set, mask), feas)?;
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCapacity {
    pub chosen: Vec<usize>,
    pub value: f64,
}

fn best_mask(set: &[usize], table: &[bool], value: impl Fn(u32) -> f64) -> OracleCapacity {
    let mut best = (0u32, 0.0);
    for mask in 1..table.len() as u32 {
        if table[mask as usize] {
            let v = value(mask);
            if v > best.1 {
                best = (mask, v);
            }
        }
    }
    OracleCapacity { chosen: mask_members(set, best.0), value: best.1 }
}

/// Largest feasible subset; ties go to the smallest bitmask.
pub fn opt_capacity(
    inst: &Instance,
    set: &[usize],
    feas: &Feasibility,
    budget: &OracleBudget,
) -> Result<OracleCapacity> {
    let table = feasible_subsets(inst, set, feas, budget)?;
    Ok(best_mask(set, &table, |m| m.count_ones() as f64))
}

/// Heaviest feasible subset; ties go to the smallest bitmask.
pub fn opt_weighted_capacity(
    inst: &Instance,
    set: &[usize],
    feas: &Feasibility,
    budget: &OracleBudget,
) -> Result<OracleCapacity> {
    let table = feasible_subsets(inst, set, feas, budget)?;
    let weights: Vec<f64> = set.iter().map(|&v| inst.links[v].weight).collect();
    Ok(best_mask(set, &table, |m| {
        (0..set.len()).filter(|i| m >> i & 1 == 1).map(|i| weights[i]).sum()
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSchedule {
    /// A witness partition of minimum size.
    pub slots: Vec<Vec<usize>>,
}

impl OracleSchedule {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Minimum number of feasible slots covering `set`, by dynamic programming
/// over subsets: each step removes a feasible subset holding the lowest
/// remaining link.
pub fn opt_schedule(
    inst: &Instance,
    set: &[usize],
    feas: &Feasibility,
    budget: &OracleBudget,
) -> Result<OracleSchedule> {
    let table = feasible_subsets(inst, set, feas, budget)?;
    let full = table.len() - 1;
    let mut cost = vec![u32::MAX; table.len()];
    let mut pick = vec![0u32; table.len()];
    cost[0] = 0;
    for mask in 1..=full as u32 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let s = sub | low;
            if table[s as usize] {
                let c = cost[(mask ^ s) as usize].saturating_add(1);
                if c < cost[mask as usize] {
                    cost[mask as usize] = c;
                    pick[mask as usize] = s;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        if cost[mask as usize] == u32::MAX {
            return Err(SinrError::Precondition(format!(
                "link {} is infeasible on its own",
                inst.links[set[low.trailing_zeros() as usize]].id
            )));
        }
    }
    let mut slots = Vec::new();
    let mut mask = full as u32;
    while mask != 0 {
        let s = pick[mask as usize];
        slots.push(mask_members(set, s));
        mask ^= s;
    }
    Ok(OracleSchedule { slots })
}

/// Exact independence number by branching on a maximum-degree vertex.
pub fn independence_number(g: &LinkGraph) -> Result<usize> {
    let n = g.n();
    if n > 128 {
        return Err(SinrError::OracleScale { size: n, limit: 128 });
    }
    let adj: Vec<u128> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u128, |m, &j| m | 1 << j))
        .collect();
    fn mis(adj: &[u128], p: u128) -> usize {
        if p == 0 {
            return 0;
        }
        let mut best_v = 0;
        let mut best_d = 0;
        let mut bits = p;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[v] & p).count_ones();
            if d == 0 {
                return 1 + mis(adj, p & !(1 << v));
            }
            if d > best_d {
                best_d = d;
                best_v = v;
            }
        }
        if best_d <= 1 {
            // a matching plus isolated vertices: one endpoint per edge
            let mut count = 0;
            let mut rest = p;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= !(1 << v) & !adj[v];
                count += 1;
            }
            return count;
        }
        let v = best_v;
        let without = mis(adj, p & !(1 << v));
        let with = 1 + mis(adj, p & !(1 << v) & !adj[v]);
        without.max(with)
    }
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    Ok(mis(&adj, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::GraphLabel;
    use crate::instance::{Link, Point};
    use crate::metric::{FadingParams, MetricSpec};

    fn line(pairs: &[(f64, f64)], beta: f64) -> Instance {
        let links = pairs
            .iter()
            .enumerate()
            .map(|(i, &(s, r))| Link::new(i as u64, Point::real([s, 0.0]), Point::real([r, 0.0])))
            .collect();
        Instance::new(FadingParams::new(3.0, MetricSpec::plane()).unwrap(), beta, links).unwrap()
    }

    #[test]
    fn tiny_tables() {
        let inst = line(&[(0.0, 1.0)], 1.0);
        let b = OracleBudget::default();
        assert_eq!(
            feasible_subsets(&inst, &[0], &Feasibility::PowerControl, &b).unwrap(),
            vec![true, true]
        );
        let far = line(&[(0.0, 1.0), (1000.0, 1001.0)], 1.0);
        let s = opt_schedule(&far, &far.all(), &Feasibility::PowerControl, &b).unwrap();
        assert_eq!(s.len(), 1);
        let c = opt_capacity(&far, &far.all(), &Feasibility::Fixed(PowerAssignment::uniform()), &b)
            .unwrap();
        assert_eq!(c.chosen, vec![0, 1]);
        let empty = opt_schedule(&far, &[], &Feasibility::PowerControl, &b).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn colocated_needs_two_slots() {
        let inst = line(&[(0.0, 1.0), (0.0, 1.0)], 1.0);
        let b = OracleBudget::default();
        let t = feasible_subsets(&inst, &inst.all(), &Feasibility::PowerControl, &b).unwrap();
        assert_eq!(t, vec![true, true, true, false]);
        let s = opt_schedule(&inst, &inst.all(), &Feasibility::PowerControl, &b).unwrap();
        assert_eq!(s.slots, vec![vec![0], vec![1]]);
        let c = opt_capacity(&inst, &inst.all(), &Feasibility::PowerControl, &b).unwrap();
        assert_eq!(c.chosen, vec![0]);
    }

    #[test]
    fn budget_enforced() {
        let pairs: Vec<(f64, f64)> = (0..15).map(|i| (10.0 * i as f64, 10.0 * i as f64 + 1.0)).collect();
        let inst = line(&pairs, 1.0);
        let err = feasible_subsets(&inst, &inst.all(), &Feasibility::PowerControl, &OracleBudget::default());
        assert!(matches!(err, Err(SinrError::OracleScale { size: 15, limit: 14 })));
        assert!(OracleBudget::with_max_links(23).is_err());
        assert!(OracleBudget::with_max_links(15).is_ok());
    }

    #[test]
    fn weighted_prefers_heavy() {
        let links = vec![
            Link::new(0, Point::real([0.0, 0.0]), Point::real([1.0, 0.0])).with_weight(1.0),
            Link::new(1, Point::real([0.0, 0.0]), Point::real([1.0, 0.0])).with_weight(5.0),
        ];
        let inst =
            Instance::new(FadingParams::new(3.0, MetricSpec::plane()).unwrap(), 1.0, links).unwrap();
        let c = opt_weighted_capacity(
            &inst,
            &inst.all(),
            &Feasibility::PowerControl,
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!((c.chosen, c.value), (vec![1], 5.0));
    }

    #[test]
    fn independence_numbers() {
        let path = LinkGraph::from_edges((0..5).collect(), GraphLabel::Custom, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(independence_number(&path).unwrap(), 3);
        let k4 = LinkGraph::from_predicate((0..4).collect(), GraphLabel::Custom, |_, _| true);
        assert_eq!(independence_number(&k4).unwrap(), 1);
        let c5 = LinkGraph::from_edges(
            (0..5).collect(),
            GraphLabel::Custom,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        );
        assert_eq!(independence_number(&c5).unwrap(), 2);
        let petersen_edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        let petersen = LinkGraph::from_edges((0..10).collect(), GraphLabel::Custom, &petersen_edges);
        assert_eq!(independence_number(&petersen).unwrap(), 4);
    }
}
