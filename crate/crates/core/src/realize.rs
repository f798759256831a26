//! Degree-sequence realization and the regular supergraph used when many
//! vertices sit far below the maximum degree.

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph, SimpleGraph};

/// Non-negative integers sorted non-increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    values: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn has_even_sum(&self) -> bool {
        self.sum() % 2 == 0
    }
}

/// Loopless multigraph with vertex `i` of degree `seq.values()[i]`, built by
/// repeatedly joining the two vertices of largest remaining degree.
///
/// Exists iff the sum is even and the largest value is at most the sum of
/// the others.
pub fn hakimi_multigraph(seq: &DegreeSequence) -> Result<MultiGraph> {
    realize_multigraph(seq.values())
}

/// As [`hakimi_multigraph`] for an arbitrary vertex order.
pub fn realize_multigraph(degrees: &[usize]) -> Result<MultiGraph> {
    let sum: usize = degrees.iter().sum();
    if sum % 2 == 1 {
        return Err(Error::Infeasible(format!("degree sum {sum} is odd")));
    }
    let max = degrees.iter().copied().max().unwrap_or(0);
    if 2 * max > sum {
        return Err(Error::Infeasible(format!("largest degree {max} exceeds the sum {} of the others", sum - max)));
    }
    let mut h = MultiGraph::empty(degrees.len());
    // ties broken toward the smaller index for reproducibility
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> =
        degrees.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, &d)| (d, std::cmp::Reverse(v))).collect();
    while let Some((da, std::cmp::Reverse(a))) = heap.pop() {
        let (db, std::cmp::Reverse(b)) = heap.pop().expect("dominance condition keeps a partner available");
        h.add_edge(a, b)?;
        if da > 1 {
            heap.push((da - 1, std::cmp::Reverse(a)));
        }
        if db > 1 {
            heap.push((db - 1, std::cmp::Reverse(b)));
        }
    }
    Ok(h)
}

/// Erdős–Gallai test for the sequence being graphic.
pub fn erdos_gallai_feasible(seq: &DegreeSequence) -> bool {
    let d = seq.values();
    let n = d.len();
    if !seq.has_even_sum() || (n > 0 && d[0] > n - 1) {
        return false;
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Havel–Hakimi realization of `degrees` on vertices in the given order.
pub fn havel_hakimi(degrees: &[usize]) -> Result<SimpleGraph> {
    let n = degrees.len();
    let mut g = SimpleGraph::empty(n);
    let mut rem: Vec<usize> = degrees.to_vec();
    loop {
        // vertex with largest remaining degree, smallest index on ties
        let Some(v) = (0..n).filter(|&v| rem[v] > 0).max_by_key(|&v| (rem[v], std::cmp::Reverse(v))) else {
            return Ok(g);
        };
        let need = rem[v];
        rem[v] = 0;
        let mut others: Vec<usize> = (0..n).filter(|&w| w != v && rem[w] > 0).collect();
        others.sort_by_key(|&w| (std::cmp::Reverse(rem[w]), w));
        if others.len() < need {
            return Err(Error::Infeasible(format!("sequence {degrees:?} is not graphic")));
        }
        for &w in &others[..need] {
            g.insert_edge(v, w)?;
            rem[w] -= 1;
        }
    }
}

/// Simple graph on `n` vertices where vertices `0..t` have degree `d` and the
/// rest degree `d - 1`.
pub fn near_regular_simple(n: usize, d: usize, t: usize) -> Result<SimpleGraph> {
    if d < 2 || n < d + 1 {
        return Err(Error::precondition(format!("need n >= d + 1 >= 3, got n = {n}, d = {d}")));
    }
    if t < 1 || t > n {
        return Err(Error::precondition(format!("need 1 <= t <= n, got t = {t}")));
    }
    if (t * d + (n - t) * (d - 1)) % 2 == 1 {
        return Err(Error::precondition("degree sum t*d + (n-t)(d-1) is odd"));
    }
    let degrees: Vec<usize> = (0..n).map(|v| if v < t { d } else { d - 1 }).collect();
    let g = havel_hakimi(&degrees)?;
    debug_assert_eq!(g.degrees(), degrees);
    Ok(g)
}

/// A `Δ*`-regular simple graph containing `G*` as the induced subgraph on
/// its first `base_n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupergraphEmbedding {
    pub host: SimpleGraph,
    pub base_n: usize,
    pub delta_star: usize,
    /// Added vertices, `base_n..base_n + |X|`.
    pub x_set: Vec<usize>,
    /// `Σ (Δ* - d(v))` over the base graph.
    pub deficiency_total: usize,
    /// Cross edges `(v, x)` in listing order.
    pub def_edges: Vec<Edge>,
    /// The graph `R` placed on `X`, indexed `0..|X|`.
    pub r_graph: SimpleGraph,
    /// Target degree in `R` for the vertices past the first `ell`.
    pub d: usize,
    /// Number of added vertices with `R`-degree `d - 1`.
    pub ell: usize,
}

/// Smallest `|X| >= (Δ*+4)/2` with `|X| ≡ n (mod 2)` and
/// `|X| >= Δ* - floor(def/|X|) + 4`.
pub fn choose_x_size(n: usize, delta_star: usize, def: usize) -> usize {
    let start = (delta_star + 4).div_ceil(2);
    (start..)
        .find(|&k| k % 2 == n % 2 && k + def / k >= delta_star + 4)
        .expect("delta_star + 4 or delta_star + 5 qualifies")
}

/// Builds the regular supergraph: new vertices `X` carrying a two-valued
/// graph `R`, joined to the base graph by exactly `Δ* - d(v)` cross edges per
/// base vertex, listed consecutively per vertex and dealt round-robin over
/// `X`.
pub fn case1_supergraph(gstar: &SimpleGraph, delta_star: usize) -> Result<SupergraphEmbedding> {
    let n = gstar.n();
    if delta_star % 2 == 1 {
        return Err(Error::precondition(format!("target degree {delta_star} must be even")));
    }
    if gstar.max_degree() > delta_star {
        return Err(Error::precondition("target degree below the maximum degree"));
    }
    let def: usize = (0..n).map(|v| delta_star - gstar.degree(v)).sum();
    if def < delta_star + 5 {
        return Err(Error::precondition(format!("total deficiency {def} below delta* + 5 = {}", delta_star + 5)));
    }
    let k = choose_x_size(n, delta_star, def);
    let q = def.div_ceil(k);
    if q > delta_star {
        return Err(Error::Infeasible(format!("{q} cross edges per added vertex exceed delta* = {delta_star}")));
    }
    let d = delta_star + 1 - q;
    if d + 5 < k {
        return Err(Error::Infeasible(format!("R-degree {} is too small for |X| = {k} (needs d - 1 >= |X| - 6)", d - 1)));
    }
    // vertices receiving q cross edges; the remaining ones receive q - 1
    let ell = def - k * (q - 1);
    let quotas: Vec<usize> = (0..k).map(|i| if i < ell { q } else { q - 1 }).collect();
    let r_degrees: Vec<usize> = quotas.iter().map(|&c| delta_star - c).collect();
    let r_graph = havel_hakimi(&r_degrees).map_err(|_| Error::Infeasible(format!("cannot realize {r_degrees:?} on X")))?;

    let mut host = gstar.clone();
    let x_set: Vec<usize> = (0..k).map(|_| host.push_vertex()).collect();
    for (a, b) in r_graph.edges() {
        host.insert_edge(x_set[a], x_set[b])?;
    }
    // deal edge j to X vertex j mod k; since the high-quota vertices come
    // first, each X vertex ends with exactly its quota
    let mut def_edges = Vec::with_capacity(def);
    let mut j = 0;
    for v in 0..n {
        for _ in gstar.degree(v)..delta_star {
            let x = x_set[j % k];
            host.insert_edge(v, x)
                .map_err(|_| Error::Infeasible(format!("vertex {v} would be joined twice to {x}; deficiency exceeds |X|")))?;
            def_edges.push((v, x));
            j += 1;
        }
    }
    if host.regular_degree() != Some(delta_star) {
        return Err(Error::Infeasible("supergraph is not regular".into()));
    }
    Ok(SupergraphEmbedding { host, base_n: n, delta_star, x_set, deficiency_total: def, def_edges, r_graph, d, ell })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hakimi_examples() {
        let h = hakimi_multigraph(&DegreeSequence::new(vec![2, 1, 1])).unwrap();
        assert_eq!(h.degrees(), vec![2, 1, 1]);
        let h = hakimi_multigraph(&DegreeSequence::new(vec![3, 1, 1, 1])).unwrap();
        assert_eq!(h.degrees(), vec![3, 1, 1, 1]);
        assert_eq!(h.max_multiplicity(), 1);
        assert!(matches!(hakimi_multigraph(&DegreeSequence::new(vec![4, 1, 1])), Err(Error::Infeasible(_))));
        assert!(matches!(hakimi_multigraph(&DegreeSequence::new(vec![2, 1])), Err(Error::Infeasible(_))));
        assert_eq!(realize_multigraph(&[1, 3, 0, 2]).unwrap().degrees(), vec![1, 3, 0, 2]);
    }

    #[test]
    fn near_regular_examples() {
        assert_eq!(near_regular_simple(4, 3, 4).unwrap(), SimpleGraph::complete(4));
        let g = near_regular_simple(5, 3, 2).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 2, 2, 2]);
        assert!(near_regular_simple(4, 3, 1).is_err());
        assert!(near_regular_simple(3, 3, 1).is_err());
    }

    #[test]
    fn erdos_gallai_examples() {
        assert!(erdos_gallai_feasible(&DegreeSequence::new(vec![3, 3, 2, 2, 2])));
        assert!(!erdos_gallai_feasible(&DegreeSequence::new(vec![3, 3, 3])));
        assert!(erdos_gallai_feasible(&DegreeSequence::new(vec![2, 2, 2])));
        assert!(!erdos_gallai_feasible(&DegreeSequence::new(vec![3, 3, 1, 1])));
        assert!(erdos_gallai_feasible(&DegreeSequence::new(vec![])));
    }

    #[test]
    fn supergraph_of_c8() {
        let e = case1_supergraph(&SimpleGraph::cycle(8), 4).unwrap();
        assert_eq!(e.x_set.len(), 4);
        assert_eq!(e.host.regular_degree(), Some(4));
        assert_eq!(e.host.induced_subgraph(&(0..8).collect::<Vec<_>>()), SimpleGraph::cycle(8));
        assert_eq!(e.def_edges.len(), 16);
        assert!(e.d + 5 >= e.x_set.len());
    }

    #[test]
    fn supergraph_rejections() {
        assert!(case1_supergraph(&SimpleGraph::cycle(8), 2).is_err());
        assert!(case1_supergraph(&SimpleGraph::cycle(8), 3).is_err());
        let k5 = SimpleGraph::complete(5);
        assert!(matches!(case1_supergraph(&k5, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn x_size_scan() {
        assert_eq!(choose_x_size(8, 4, 16), 4);
        // delta* = 10, def = 15: 8 + 1 < 14, 10 + 1 < 14, 12 + 1 < 14, 14 + 1 >= 14
        assert_eq!(choose_x_size(10, 10, 15), 14);
    }
}
