//! Removing linear forests whose leaves follow a deficiency multigraph, so
//! that the residual becomes regular.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{Edge, LinearForest, MultiGraph, SimpleGraph};
use crate::hamilton::k_linkage;
use crate::realize::realize_multigraph;

const STAGE: &str = "reduce_to_regular";
pub const DEFAULT_K_MAX: usize = 2;

/// `max(d - d_G(v), 0)`
pub fn deficiency_of(g: &SimpleGraph, v: usize, d: usize) -> usize {
    d.saturating_sub(g.degree(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyPlan {
    pub target_d: usize,
    /// `d_H(v) = max(d - d_G(v), 0)`.
    pub multigraph: MultiGraph,
    /// Matchings partitioning `E(H)`, each of size at most `k_max`.
    pub matchings: Vec<Vec<Edge>>,
    pub forest_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub plan: DeficiencyPlan,
    pub forests: Vec<LinearForest>,
    pub residual: SimpleGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceOptions {
    pub k_max: usize,
    /// Rejects plans whose largest deficiency exceeds this value.
    pub df_cap: Option<usize>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { k_max: DEFAULT_K_MAX, df_cap: None }
    }
}

/// Builds the deficiency multigraph and splits it into small matchings.
/// Vertices above `d` have zero deficiency and stay internal everywhere.
pub fn deficiency_plan(g: &SimpleGraph, d: usize, opts: ReduceOptions) -> Result<DeficiencyPlan> {
    if opts.k_max == 0 {
        return Err(Error::precondition("k_max must be positive"));
    }
    let df: Vec<usize> = (0..g.n()).map(|v| deficiency_of(g, v, d)).collect();
    if let Some(cap) = opts.df_cap {
        if let Some(&top) = df.iter().max().filter(|&&t| t > cap) {
            return Err(Error::Hypothesis(format!("largest deficiency {top} exceeds the cap {cap}")));
        }
    }
    let h = realize_multigraph(&df)?;
    // first fit on both endpoints uses at most 2Δ(H) - 1 colours
    let mut classes: Vec<Vec<Edge>> = Vec::new();
    let mut seen: Vec<Vec<bool>> = Vec::new();
    for &(u, v) in h.edges() {
        let c = (0..classes.len()).find(|&c| !seen[c][u] && !seen[c][v]).unwrap_or_else(|| {
            classes.push(Vec::new());
            seen.push(vec![false; g.n()]);
            classes.len() - 1
        });
        seen[c][u] = true;
        seen[c][v] = true;
        classes[c].push((u, v));
    }
    debug_assert!(classes.len() <= (2 * h.max_degree()).max(1));
    let matchings: Vec<Vec<Edge>> = classes.iter().flat_map(|c| c.chunks(opts.k_max).map(<[Edge]>::to_vec)).collect();
    Ok(DeficiencyPlan { target_d: d, forest_count: matchings.len(), multigraph: h, matchings })
}

/// Removes one spanning linear forest per matching `M_i`, with leaves
/// exactly `V(M_i)`, via a Hamilton linkage of the pairs of `M_i`.
pub fn reduce_to_regular(g: &SimpleGraph, d: usize, opts: ReduceOptions, budget: &Budget) -> Result<Reduction> {
    let plan = deficiency_plan(g, d, opts)?;
    let n = g.n();
    let mut residual = g.clone();
    let mut forests = Vec::with_capacity(plan.matchings.len());
    for (i, m) in plan.matchings.iter().enumerate() {
        let progress = format!("matching {} of {} ({} forests removed)", i + 1, plan.matchings.len(), forests.len());
        let paths = match k_linkage(&residual, m, budget)? {
            SearchOutcome::Found(p) => p,
            SearchOutcome::NotFound => return Err(Error::stage(STAGE, format!("no spanning linkage for {progress}"))),
            SearchOutcome::Unknown => return Err(Error::stage(STAGE, format!("linkage search out of budget at {progress}"))),
        };
        let edges: Vec<Edge> = paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))).collect();
        residual = residual.remove_edges(&edges)?;
        forests.push(LinearForest::new(n, edges));
    }
    let l = forests.len();
    for v in 0..n {
        let expected = g.degree(v) + deficiency_of(g, v, d) - 2 * l;
        if residual.degree(v) != expected {
            return Err(Error::stage(STAGE, format!("degree identity fails at vertex {v}")));
        }
    }
    Ok(Reduction { plan, forests, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_minus_edge() {
        let g = SimpleGraph::complete(5).remove_edges(&[(0, 1)]).unwrap();
        let r = reduce_to_regular(&g, 4, ReduceOptions::default(), &Budget::unlimited()).unwrap();
        assert_eq!(r.plan.forest_count, 1);
        assert_eq!(r.plan.multigraph.edges(), &[(0, 1)]);
        assert_eq!(r.residual.regular_degree(), Some(2));
        assert!(r.forests[0].defect().is_none());
    }

    #[test]
    fn regular_input_has_empty_plan() {
        let g = SimpleGraph::complete(5);
        let r = reduce_to_regular(&g, 4, ReduceOptions::default(), &Budget::unlimited()).unwrap();
        assert_eq!(r.plan.forest_count, 0);
        assert_eq!(r.residual, g);
    }

    #[test]
    fn odd_total_is_rejected() {
        let g = SimpleGraph::complete(5).remove_edges(&[(0, 1)]).unwrap();
        assert!(matches!(reduce_to_regular(&g, 5, ReduceOptions::default(), &Budget::unlimited()), Err(Error::Infeasible(_))));
        let capped = ReduceOptions { df_cap: Some(0), ..ReduceOptions::default() };
        assert!(matches!(reduce_to_regular(&g, 4, capped, &Budget::unlimited()), Err(Error::Hypothesis(_))));
    }
}
