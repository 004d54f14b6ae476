//! Greedy, first-fit and local-ratio stack algorithms over an inductive
//! vertex order. All node arguments are graph-local indices.

use crate::error::{Result, SinrError};
use crate::graphs::LinkGraph;

/// Forward pass over `order`, keeping a node iff none of its neighbors was
/// kept. The result is independent in `g`.
pub fn greedy_pi_subset(order: &[usize], g: &LinkGraph) -> Vec<usize> {
    let mut kept = vec![false; g.n()];
    let mut out = Vec::new();
    for &v in order {
        if g.neighbors(v).iter().all(|&u| !kept[u]) {
            kept[v] = true;
            out.push(v);
        }
    }
    out
}

/// Assigns nodes, in `pass` order, to the first class holding no neighbor.
pub fn first_fit_coloring(pass: impl IntoIterator<Item = usize>, g: &LinkGraph) -> Vec<Vec<usize>> {
    let mut color = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut taken = Vec::new();
    for v in pass {
        taken.clear();
        taken.resize(classes.len() + 1, false);
        for &u in g.neighbors(v) {
            if color[u] != usize::MAX {
                taken[color[u]] = true;
            }
        }
        let c = taken.iter().position(|t| !t).expect("one spare class");
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
        color[v] = c;
    }
    classes
}

/// First-fit partition over the reverse of the inductive `order`.
pub fn firstfit_partition(order: &[usize], g: &LinkGraph) -> Vec<Vec<usize>> {
    first_fit_coloring(order.iter().rev().copied(), g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackOutcome {
    pub chosen: Vec<usize>,
    /// Nodes pushed during the forward phase, bottom first.
    pub stack: Vec<usize>,
    /// Residual weight of each stacked node at the moment it was pushed.
    pub residual: Vec<f64>,
    pub chosen_weight: f64,
    /// Sum of the residual weights over the final stack.
    pub stack_residual_weight: f64,
}

/// Local-ratio stack algorithm for the weighted maximum `pi`-subset problem.
///
/// Push phase: walk `order`, push a node whose residual weight is positive
/// and subtract that residual from its later neighbors. Pop phase: add a
/// popped node whenever it keeps the chosen set a `pi`-set.
pub fn stack_weighted_pi_subset(
    order: &[usize],
    g: &LinkGraph,
    weights: &[f64],
    mut pi_test: impl FnMut(&[usize]) -> bool,
) -> Result<StackOutcome> {
    let n = g.n();
    if weights.len() != n {
        return Err(SinrError::Precondition(format!(
            "{} weights for {n} nodes",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(SinrError::Precondition(format!("negative weight {w}")));
    }
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut residual_now = weights.to_vec();
    let mut stack = Vec::new();
    let mut residual = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let r = residual_now[v];
        if r > 0.0 {
            stack.push(v);
            residual.push(r);
            for &u in g.neighbors(v) {
                if pos[u] > i {
                    residual_now[u] -= r;
                }
            }
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    for &u in stack.iter().rev() {
        if !pi_test(&[u]) {
            return Err(SinrError::InvalidProperty(format!(
                "singleton {{{u}}} fails the property"
            )));
        }
        chosen.push(u);
        if !pi_test(&chosen) {
            chosen.pop();
        }
    }
    let chosen_weight = chosen.iter().map(|&v| weights[v]).sum();
    let stack_residual_weight = residual.iter().sum();
    Ok(StackOutcome { chosen, stack, residual, chosen_weight, stack_residual_weight })
}
