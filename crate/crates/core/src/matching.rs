//! Maximum matchings, Berge–Tutte deficiency certificates and the matching
//! structure of the contracted bipartite graph `B(X)`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{norm, Edge, MultiGraph, SimpleGraph};
use crate::rational::Rational;

pub const DEFAULT_CERTIFICATE_CAP: usize = 16;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn from_mates(mate: &[usize]) -> Self {
        let edges = mate.iter().enumerate().filter(|&(v, &w)| w != NONE && v < w).map(|(v, &w)| (v, w)).collect();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Covered vertices in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Edges pairwise disjoint and present in `host`.
    pub fn is_matching_in(&self, host: &SimpleGraph) -> bool {
        let vs = self.vertices();
        vs.windows(2).all(|w| w[0] != w[1]) && self.edges.iter().all(|&(u, v)| host.has_edge(u, v))
    }
}

/// Maximum-cardinality matching by Edmonds' blossom algorithm.
pub fn max_matching(g: &SimpleGraph) -> Matching {
    Blossom::new(g).solve()
}

/// Maximum matching of a multigraph; parallel edges play no role.
pub fn max_matching_multi(h: &MultiGraph) -> Matching {
    max_matching(&h.underlying_simple())
}

/// `df(G) = n - 2 ν(G)`.
pub fn deficiency(g: &SimpleGraph) -> usize {
    g.n() - 2 * max_matching(g).len()
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn solve(mut self) -> Matching {
        let n = self.g.n();
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(w) = self.g.neighbors(v).find(|&w| self.mate[w] == NONE) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    let mut v = end;
                    while v != NONE {
                        let pv = self.parent[v];
                        let ppv = self.mate[pv];
                        self.mate[v] = pv;
                        self.mate[pv] = v;
                        v = ppv;
                    }
                }
            }
        }
        Matching::from_mates(&self.mate)
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let nbrs: Vec<usize> = self.g.neighbors(v).collect();
            for to in nbrs {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let t = self.mate[to];
                    self.used[t] = true;
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

/// Whether `G[vertices] - v` has a perfect matching for every `v`.
pub fn is_factor_critical(g: &SimpleGraph, vertices: &[usize]) -> bool {
    vertices.len() % 2 == 1
        && vertices.iter().all(|&v| {
            let rest: Vec<usize> = vertices.iter().copied().filter(|&w| w != v).collect();
            let h = g.induced_subgraph(&rest);
            2 * max_matching(&h).len() == rest.len()
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyCertificate {
    pub df: usize,
    pub x_set: Vec<usize>,
    /// Components of `G - X`, ordered by smallest vertex; all odd.
    pub odd_components: Vec<Vec<usize>>,
}

fn components_of_masks(masks: &[u64], alive: u64) -> Vec<u64> {
    let mut rest = alive;
    let mut comps = Vec::new();
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = masks[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        comps.push(comp);
    }
    comps
}

/// Berge–Tutte certificate with an inclusion-maximal optimizer `X`, found by
/// enumerating all vertex subsets. Among optimizers the largest is taken
/// (ties by smallest bitmask), so no optimizer strictly contains it.
pub fn deficiency_certificate(g: &SimpleGraph) -> Result<DeficiencyCertificate> {
    deficiency_certificate_with_cap(g, DEFAULT_CERTIFICATE_CAP)
}

pub fn deficiency_certificate_with_cap(g: &SimpleGraph, cap: usize) -> Result<DeficiencyCertificate> {
    let n = g.n();
    let cap = cap.min(30);
    if n > cap {
        return Err(Error::OverCap { n, cap, hint: "certificate mode enumerates all subsets; use max_matching for df alone" });
    }
    let masks = g.adjacency_masks().expect("n <= 30");
    let full: u64 = (1u64 << n) - 1;
    let mut best: Option<(i64, u32, u64)> = None;
    for x in 0..=full {
        let odd = components_of_masks(&masks, full & !x).iter().filter(|c| c.count_ones() % 2 == 1).count() as i64;
        let value = odd - x.count_ones() as i64;
        let better = match best {
            None => true,
            Some((bv, bs, _)) => value > bv || (value == bv && x.count_ones() > bs),
        };
        if better {
            best = Some((value, x.count_ones(), x));
        }
    }
    let (value, _, x) = best.expect("at least the empty set");
    let comps = components_of_masks(&masks, full & !x);
    let bits = |m: u64| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    let mut odd_components: Vec<Vec<usize>> = comps.iter().map(|&c| bits(c)).collect();
    odd_components.sort();
    let cert = DeficiencyCertificate { df: value.max(0) as usize, x_set: bits(x), odd_components };
    if let Some(problem) = certificate_defect(g, &cert) {
        return Err(Error::Hypothesis(problem));
    }
    Ok(cert)
}

/// Checks the structural properties a maximal certificate must have.
pub fn certificate_defect(g: &SimpleGraph, cert: &DeficiencyCertificate) -> Option<String> {
    let n = g.n();
    if cert.df % 2 != n % 2 {
        return Some(format!("df = {} has the wrong parity for n = {n}", cert.df));
    }
    if cert.odd_components.len() as i64 - cert.x_set.len() as i64 != cert.df as i64 {
        return Some("o(G-X) - |X| differs from df".into());
    }
    if 2 * max_matching(g).len() + cert.df != n {
        return Some("maximum matching size disagrees with df".into());
    }
    for comp in &cert.odd_components {
        if !is_factor_critical(g, comp) {
            return Some(format!("component {comp:?} is not odd and factor-critical"));
        }
    }
    None
}

/// `B(X)`: components of `G - X` contracted, edges inside `X` dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryBipartite {
    /// Vertices `0..|X|` are `X` in the given order, the rest are components.
    pub graph: MultiGraph,
    pub x_side: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

impl AuxiliaryBipartite {
    pub fn x_len(&self) -> usize {
        self.x_side.len()
    }

    /// `d = max{d_B(x) : x ∈ X}`, zero when `X` is empty.
    pub fn max_x_degree(&self) -> usize {
        let deg = self.graph.degrees();
        deg[..self.x_len()].iter().copied().max().unwrap_or(0)
    }
}

pub fn auxiliary_bipartite(g: &SimpleGraph, x_set: &[usize]) -> Result<AuxiliaryBipartite> {
    let n = g.n();
    let mut in_x = vec![false; n];
    for &x in x_set {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
        in_x[x] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let sub = g.induced_subgraph(&rest);
    let components: Vec<Vec<usize>> =
        sub.components().into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()).collect();
    let mut comp_of = vec![NONE; n];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let k = x_set.len();
    let mut b = MultiGraph::empty(k + components.len());
    for (i, &x) in x_set.iter().enumerate() {
        for w in g.neighbors(x) {
            if comp_of[w] != NONE {
                b.add_edge(i, k + comp_of[w])?;
            }
        }
    }
    Ok(AuxiliaryBipartite { graph: b, x_side: x_set.to_vec(), components })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeavyMatching {
    /// Edges of `B(X)` as `(x index, component vertex)`.
    pub matching: Matching,
    pub d: usize,
    /// Component vertices of `B(X)` with degree at least `d`.
    pub heavy: Vec<usize>,
}

// Kuhn's augmenting paths from `sources` into their neighbours.
fn bipartite_saturating(adj: &[Vec<usize>], sources: &[usize], total: usize) -> Option<Vec<usize>> {
    fn augment(v: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [usize]) -> bool {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                if mate[w] == NONE || augment(mate[w], adj, seen, mate) {
                    mate[w] = v;
                    mate[v] = w;
                    return true;
                }
            }
        }
        false
    }
    let mut mate = vec![NONE; total];
    for &s in sources {
        let mut seen = vec![false; total];
        if !augment(s, adj, &mut seen, &mut mate) {
            return None;
        }
    }
    Some(mate)
}

/// A matching of `B(X)` covering `X` and every component vertex of degree at
/// least `d`, built from a matching `M1` covering `X` and a matching `M2`
/// saturating the heavy side by choosing one of them on each component of
/// `M1 Δ M2`.
pub fn matching_covering_x_and_heavy(b: &AuxiliaryBipartite) -> Result<HeavyMatching> {
    let total = b.graph.n();
    let k = b.x_len();
    let deg = b.graph.degrees();
    let d = b.max_x_degree();
    let heavy: Vec<usize> = (k..total).filter(|&y| deg[y] >= d && (k > 0 || deg[y] > 0)).collect();
    let simple = b.graph.underlying_simple();
    let adj: Vec<Vec<usize>> = (0..total).map(|v| simple.neighbors(v).collect()).collect();

    let xs: Vec<usize> = (0..k).collect();
    let m1 = bipartite_saturating(&adj, &xs, total)
        .ok_or_else(|| Error::Hypothesis("no matching of B(X) covers X; X is not a maximal certificate".into()))?;
    let mut is_heavy = vec![false; total];
    heavy.iter().for_each(|&y| is_heavy[y] = true);
    let adj_heavy: Vec<Vec<usize>> =
        (0..total).map(|v| adj[v].iter().copied().filter(|&w| v >= k || is_heavy[w]).collect()).collect();
    let m2 = bipartite_saturating(&adj_heavy, &heavy, total)
        .ok_or_else(|| Error::Hypothesis("heavy component vertices cannot all be matched into X".into()))?;

    let mut chosen = vec![NONE; total];
    let mut seen = vec![false; total];
    for start in 0..total {
        if seen[start] {
            continue;
        }
        // walk the component of M1 ∪ M2 containing `start`
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in [m1[v], m2[v]] {
                if w != NONE && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        let m1_misses_heavy = comp.iter().any(|&v| is_heavy[v] && m1[v] == NONE);
        let pick = if m1_misses_heavy { &m2 } else { &m1 };
        for &v in &comp {
            chosen[v] = pick[v];
        }
    }
    let matching = Matching::from_mates(&chosen);
    let covered_all = (0..k).chain(heavy.iter().copied()).all(|v| chosen[v] != NONE);
    if !covered_all {
        return Err(Error::Hypothesis("combined matching misses a required vertex".into()));
    }
    Ok(HeavyMatching { matching, d, heavy })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementMatching {
    /// Edges of the complement, none touching `excluded`.
    pub matching: Matching,
    pub excluded: usize,
    pub r: usize,
    pub covered: usize,
    /// `ceil(n - n/(n-r) - 3)`, clamped at zero.
    pub required: usize,
}

/// The unique vertex of degree `r+1` when every other vertex has degree `r`.
pub fn almost_regular_apex(g: &SimpleGraph) -> Option<(usize, usize)> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let max = g.max_degree();
    let tops: Vec<usize> = (0..n).filter(|&v| g.degree(v) == max).collect();
    if tops.len() != 1 || max == 0 || (0..n).any(|v| v != tops[0] && g.degree(v) != max - 1) {
        return None;
    }
    Some((tops[0], max - 1))
}

/// `ceil(n - n/(n-r) - 3)`, clamped at zero.
pub fn complement_matching_bound(n: usize, r: usize) -> usize {
    let value = Rational::from_integer(n as i64 - 3) - Rational::new(n as i64, (n - r) as i64);
    value.ceil().to_integer().max(0) as usize
}

/// A maximum matching of the complement avoiding the degree-`(r+1)` vertex
/// `x` of an almost `r`-regular graph, with its guaranteed coverage.
pub fn complement_matching_almost_regular(g: &SimpleGraph, x: usize) -> Result<ComplementMatching> {
    let (apex, r) = almost_regular_apex(g)
        .ok_or_else(|| Error::precondition("graph is not almost regular (one vertex of degree r+1, the rest r)"))?;
    if apex != x {
        return Err(Error::precondition(format!("vertex {x} is not the unique vertex of degree r+1 (that is {apex})")));
    }
    let n = g.n();
    if r + 2 > n {
        return Err(Error::precondition("need r <= n - 2"));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != x).collect();
    let comp = g.complement().induced_subgraph(&rest);
    let m = max_matching(&comp);
    let matching = Matching { edges: m.edges.iter().map(|&(a, b)| norm(rest[a], rest[b])).collect() };
    let covered = 2 * matching.len();
    Ok(ComplementMatching { matching, excluded: x, r, covered, required: complement_matching_bound(n, r) })
}
