//! Conflict graphs over links: `G_q`, unit-disc graphs `U_z`, the
//! well-separated class partition and the graph `H(S)` used by the
//! mean-power scheduler.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Result, SinrError};
use crate::instance::{Instance, Mode, PowerAssignment};
use crate::metric::z1;
use crate::numeric::{LogScalar, Scalar};
use crate::sinr::{dispatch, pair_affectance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphLabel {
    Gq(f64),
    Uz(f64),
    H,
    Custom,
}

/// Undirected simple graph with one node per link.
///
/// Node `i` stands for instance link `links[i]`; adjacency lists hold node
/// indices in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGraph {
    pub label: GraphLabel,
    links: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl LinkGraph {
    pub fn empty(links: Vec<usize>, label: GraphLabel) -> Self {
        let n = links.len();
        Self { label, links, adj: vec![Vec::new(); n] }
    }

    /// Graph from a symmetric predicate over pairs of node indices.
    pub fn from_predicate(
        links: Vec<usize>,
        label: GraphLabel,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut g = Self::empty(links, label);
        let n = g.n();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                }
            }
        }
        for nb in &mut g.adj {
            nb.sort_unstable();
        }
        g
    }

    pub fn from_edges(links: Vec<usize>, label: GraphLabel, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(links, label);
        for &(a, b) in edges {
            assert!(a != b, "self-loop {a}");
            if !g.adj[a].contains(&b) {
                g.adj[a].push(b);
                g.adj[b].push(a);
            }
        }
        for nb in &mut g.adj {
            nb.sort_unstable();
        }
        g
    }

    pub fn n(&self) -> usize {
        self.links.len()
    }

    /// Instance link index of node `i`.
    pub fn link(&self, i: usize) -> usize {
        self.links[i]
    }

    pub fn links(&self) -> &[usize] {
        &self.links
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn is_independent(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(k, &a)| nodes[k + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }

    /// Edge list keyed by link id: one `"u v"` line per edge with `u < v`,
    /// lines sorted.
    pub fn to_edge_list(&self, inst: &Instance) -> String {
        let id = |i: usize| inst.links[self.links[i]].id;
        let mut pairs: Vec<(u64, u64)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (id(a), id(b));
                (x.min(y), x.max(y))
            })
            .collect();
        pairs.sort_unstable();
        let mut s = String::new();
        for (u, v) in pairs {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Separation factor that makes sender-separated nearly-equilength links a
/// `p`-signal set under uniform power: `z1(p)`, floored at 4 (8 in
/// bidirectional mode) so that the shell argument behind `z1` applies.
pub fn sufficient_separation(p: f64, inst: &Instance) -> Result<f64> {
    let floor = match inst.mode {
        Mode::Unidirectional => 4.0,
        Mode::Bidirectional => 8.0,
    };
    Ok(z1(p, &inst.fading)?.max(floor))
}

fn q_independent<T: Scalar>(inst: &Instance, v: usize, w: usize, q: f64) -> bool {
    let dvw = T::from_measure(&inst.link_distance(v, w));
    let dwv = T::from_measure(&inst.link_distance(w, v));
    let lv = T::from_measure(&inst.length(v));
    let lw = T::from_measure(&inst.length(w));
    dvw * dwv >= T::from_f64(q * q) * lv * lw
}

/// `d_vw * d_wv >= q^2 l_v l_w` with distances per instance mode.
pub fn is_q_independent(inst: &Instance, v: usize, w: usize, q: f64) -> bool {
    dispatch!(inst, q_independent(inst, v, w, q))
}

/// Links adjacent iff they are not `q`-independent.
pub fn build_gq(inst: &Instance, set: &[usize], q: f64) -> Result<LinkGraph> {
    if !(q > 0.0) {
        return Err(SinrError::Domain(format!("q must be positive, got {q}")));
    }
    Ok(LinkGraph::from_predicate(set.to_vec(), GraphLabel::Gq(q), |i, j| {
        !is_q_independent(inst, set[i], set[j], q)
    }))
}

fn sender_closer<T: Scalar>(inst: &Instance, v: usize, w: usize, radius: T, strict: bool) -> bool {
    let d = T::from_measure(&inst.sender_distance(v, w));
    if strict {
        d < radius
    } else {
        d <= radius
    }
}

fn min_length<T: Scalar>(inst: &Instance, set: &[usize]) -> T {
    set.iter()
        .map(|&v| T::from_measure(&inst.length(v)))
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty set")
}

/// Unit-disc graph on senders: adjacent iff `d(s_v, s_w) < z * d_min(set)`.
pub fn build_uz(inst: &Instance, set: &[usize], z: f64) -> Result<LinkGraph> {
    if !(z > 0.0) {
        return Err(SinrError::Domain(format!("z must be positive, got {z}")));
    }
    if set.is_empty() {
        return Err(SinrError::Precondition("unit-disc graph of an empty link set".into()));
    }
    fn go<T: Scalar>(inst: &Instance, set: &[usize], z: f64) -> LinkGraph {
        let radius = T::from_f64(z) * min_length::<T>(inst, set);
        LinkGraph::from_predicate(set.to_vec(), GraphLabel::Uz(z), |i, j| {
            sender_closer(inst, set[i], set[j], radius, true)
        })
    }
    Ok(dispatch!(inst, go(inst, set, z)))
}

/// Links grouped by `ceil(lg length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthGroups {
    pub groups: BTreeMap<i64, Vec<usize>>,
}

impl LengthGroups {
    /// Length diversity `g(L)`.
    pub fn diversity(&self) -> usize {
        self.groups.len()
    }
}

pub fn length_groups(inst: &Instance, set: &[usize]) -> LengthGroups {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &v in set {
        groups.entry(inst.band(v)).or_default().push(v);
    }
    LengthGroups { groups }
}

/// Partition into classes whose lengths pairwise differ by a factor below 2
/// or above `lambda_sep`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPartition {
    /// Class count `M = ceil(lg 2 Lambda)`.
    pub m: usize,
    pub classes: Vec<Vec<usize>>,
    /// `tau = 2 beta n`.
    pub tau: f64,
    /// `Lambda = 2 tau^{2/alpha}`.
    pub lambda_sep: f64,
}

impl ClassPartition {
    pub fn nonempty(&self) -> impl Iterator<Item = (usize, &Vec<usize>)> {
        self.classes.iter().enumerate().filter(|(_, c)| !c.is_empty())
    }
}

/// `tau`, `Lambda` and `M` for an instance of `n` links.
pub fn separation_params(inst: &Instance) -> (f64, f64, usize) {
    let tau = 2.0 * inst.beta * inst.len() as f64;
    let lambda_sep = 2.0 * tau.powf(2.0 / inst.alpha());
    let m = (2.0 * lambda_sep).log2().ceil().max(1.0) as usize;
    (tau, lambda_sep, m)
}

pub fn well_separated_classes(inst: &Instance, set: &[usize]) -> Result<ClassPartition> {
    let (tau, lambda_sep, m) = separation_params(inst);
    let mut classes = vec![Vec::new(); m];
    for &v in set {
        classes[inst.band(v).rem_euclid(m as i64) as usize].push(v);
    }
    let part = ClassPartition { m, classes, tau, lambda_sep };
    for class in &part.classes {
        for (k, &v) in class.iter().enumerate() {
            for &w in &class[k + 1..] {
                let ratio = (inst.length(v).log2() - inst.length(w).log2()).abs();
                if !(ratio < 1.0 || ratio > lambda_sep.log2()) {
                    return Err(SinrError::Internal(format!(
                        "class is not well-separated: links {} and {}",
                        inst.links[v].id, inst.links[w].id
                    )));
                }
            }
        }
    }
    Ok(part)
}

fn close<T: Scalar>(inst: &Instance, v: usize, w: usize, t: f64) -> bool {
    let mean = PowerAssignment::mean(inst.alpha());
    let t = T::from_f64(t);
    match (pair_affectance::<T>(inst, &mean, v, w), pair_affectance::<T>(inst, &mean, w, v)) {
        (Some(a), Some(b)) => a >= t || b >= t,
        _ => true,
    }
}

/// `max(a_v(w), a_w(v)) >= t` under mean power.
pub fn t_close(inst: &Instance, v: usize, w: usize, t: f64) -> bool {
    dispatch!(inst, close(inst, v, w, t))
}

/// The graph `H(S)` of one well-separated class.
///
/// Same-band links are adjacent when their senders lie within `z * d_band`
/// (`z` the sufficient separation at `2^{1 + alpha/2} beta`, `d_band` the
/// shortest link of the band inside the class); links of different bands are
/// adjacent when `1/tau`-close under mean power.
pub fn build_h(inst: &Instance, class: &[usize], partition: &ClassPartition) -> Result<LinkGraph> {
    let p = 2f64.powf(1.0 + inst.alpha() / 2.0) * inst.beta;
    let z = sufficient_separation(p, inst)?;
    let bands: Vec<i64> = class.iter().map(|&v| inst.band(v)).collect();
    fn go<T: Scalar>(
        inst: &Instance,
        class: &[usize],
        bands: &[i64],
        z: f64,
        tau: f64,
    ) -> LinkGraph {
        let mut band_min: BTreeMap<i64, T> = BTreeMap::new();
        for (&v, &b) in class.iter().zip(bands) {
            let l = T::from_measure(&inst.length(v));
            band_min.entry(b).and_modify(|m| if l < *m { *m = l }).or_insert(l);
        }
        let zf = T::from_f64(z);
        LinkGraph::from_predicate(class.to_vec(), GraphLabel::H, |i, j| {
            let (v, w) = (class[i], class[j]);
            if bands[i] == bands[j] {
                sender_closer(inst, v, w, zf * band_min[&bands[i]], false)
            } else {
                close::<T>(inst, v, w, 1.0 / tau)
            }
        })
    }
    Ok(dispatch!(inst, go(inst, class, &bands, z, partition.tau)))
}

/// Largest inductiveness witnessed along `order`: the maximum, over
/// positions `i`, of the largest feasible subset of the closed neighborhood
/// of `order[i]` restricted to `order[i..]`. Exhaustive, so neighborhoods
/// above [`MAX_INDUCTIVE_NEIGHBORHOOD`] nodes are refused.
pub fn measured_inductiveness(
    g: &LinkGraph,
    order: &[usize],
    feasible: impl Fn(&[usize]) -> bool,
) -> Result<usize> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(SinrError::Precondition("order is not a permutation of the nodes".into()));
        }
        pos[v] = k;
    }
    if order.len() != n {
        return Err(SinrError::Precondition("order is not a permutation of the nodes".into()));
    }
    let mut k_max = 0;
    let mut buf = Vec::with_capacity(MAX_INDUCTIVE_NEIGHBORHOOD);
    for (i, &v) in order.iter().enumerate() {
        let mut hood = vec![v];
        hood.extend(g.neighbors(v).iter().copied().filter(|&u| pos[u] > i));
        if hood.len() > MAX_INDUCTIVE_NEIGHBORHOOD {
            return Err(SinrError::OracleScale {
                size: hood.len(),
                limit: MAX_INDUCTIVE_NEIGHBORHOOD,
            });
        }
        let mut best = (0u32, 0u32);
        for mask in 1u32..(1u32 << hood.len()) {
            let size = mask.count_ones();
            if size <= best.0 {
                continue;
            }
            select(&hood, mask, &mut buf);
            if feasible(&buf) {
                best = (size, mask);
            }
        }
        // hereditary spot check on the maximizer
        let mask = best.1;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if mask ^ bit == 0 {
                continue;
            }
            select(&hood, mask ^ bit, &mut buf);
            if !feasible(&buf) {
                return Err(SinrError::InvalidProperty(
                    "feasibility test is not hereditary".into(),
                ));
            }
        }
        k_max = k_max.max(best.0 as usize);
    }
    Ok(k_max)
}

pub const MAX_INDUCTIVE_NEIGHBORHOOD: usize = 22;

fn select(items: &[usize], mask: u32, out: &mut Vec<usize>) {
    out.clear();
    out.extend(items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x));
}

/// Log-domain affectance convenience used by diagnostics.
pub fn mean_affectance_log(inst: &Instance, w: usize, v: usize) -> Option<LogScalar> {
    let mean = PowerAssignment::mean(inst.alpha());
    dispatch!(inst, pair_affectance(inst, &mean, w, v), |x| x.map(Scalar::to_log))
}
