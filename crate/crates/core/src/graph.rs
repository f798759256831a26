//! Vertex-indexed graph containers and the degree bookkeeping shared by every
//! other module.
//!
//! Vertices are dense indices `0..n`. Edges of undirected graphs are stored
//! normalised as `(min, max)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{at_least, Rational};

pub type Edge = (usize, usize);

/// Orders the endpoints of an undirected edge.
#[inline]
pub fn norm(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimpleGraph").field("n", &self.n()).field("edges", &self.edges()).finish()
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: vec![BTreeSet::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = SimpleGraph::path(n);
        g.link(0, n - 1);
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for v in 1..n {
            g.link(v - 1, v);
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = SimpleGraph::empty(leaves + 1);
        for v in 1..=leaves {
            g.link(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = SimpleGraph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.link(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = SimpleGraph::empty(10);
        for i in 0..5 {
            g.link(i, (i + 1) % 5);
            g.link(i, i + 5);
            g.link(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Disjoint union, the vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.adj.push(BTreeSet::new());
        }
        for (u, v) in other.edges() {
            g.link(u + shift, v + shift);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    fn link(&mut self, u: usize, v: usize) {
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            let (a, b) = norm(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.link(u, v);
        Ok(())
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if !self.adj[u].remove(&v) {
            let (a, b) = norm(u, v);
            return Err(Error::MissingEdge(a, b));
        }
        self.adj[v].remove(&u);
        self.m -= 1;
        Ok(())
    }

    /// Appends a new isolated vertex and returns its index.
    pub fn push_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    /// `G - F`; every edge of `F` must be present.
    pub fn remove_edges(&self, edges: &[Edge]) -> Result<SimpleGraph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.delete_edge(u, v)?;
        }
        Ok(g)
    }

    /// `G + F`; every edge of `F` must be absent.
    pub fn add_edges(&self, edges: &[Edge]) -> Result<SimpleGraph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Copy with one extra isolated vertex, index `n`.
    pub fn add_vertex(&self) -> SimpleGraph {
        let mut g = self.clone();
        g.push_vertex();
        g
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.n();
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.link(u, v);
                }
            }
        }
        g
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.max_degree();
        (self.min_degree() == r).then_some(r)
    }

    /// Vertices ordered by non-decreasing degree, ties by index.
    pub fn degree_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| (self.degree(v), v));
        order
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        let order = self.degree_order();
        Ok(DegreeProfile {
            max: self.max_degree(),
            min: self.min_degree(),
            sorted: order.iter().map(|&v| self.degree(v)).collect(),
        })
    }

    /// `G[S]` relabelled to `0..|S|` in the order of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.link(i, j);
                }
            }
        }
        g
    }

    /// Number of edges with one end in `s` and the other in `t` (disjoint sets).
    pub fn edges_between(&self, s: &[usize], t: &[usize]) -> usize {
        let mut in_t = vec![false; self.n()];
        for &v in t {
            in_t[v] = true;
        }
        s.iter().map(|&u| self.neighbors(u).filter(|&w| in_t[w]).count()).sum()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Adjacency as 64-bit masks; `None` above 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|nbrs| nbrs.iter().fold(0u64, |m, &v| m | (1 << v))).collect())
    }
}

impl serde::Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimpleGraph", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            edges: Vec<Edge>,
        }
        let raw = Raw::deserialize(de)?;
        SimpleGraph::from_edges(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub max: usize,
    pub min: usize,
    pub sorted: Vec<usize>,
}

/// A loopless multigraph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges.push(norm(u, v));
        Ok(())
    }

    /// Edge multiset in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let e = norm(u, v);
        self.edges.iter().filter(|&&f| f == e).count()
    }

    /// Largest edge multiplicity.
    pub fn max_multiplicity(&self) -> usize {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.chunk_by(|a, b| a == b).map(<[Edge]>::len).max().unwrap_or(0)
    }

    /// Simple graph on the same vertices with one edge per adjacent pair.
    pub fn underlying_simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for &(u, v) in &self.edges {
            g.link(u, v);
        }
        g
    }
}

/// A digraph without loops or parallel arcs (antiparallel pairs allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    out: Vec<BTreeSet<usize>>,
    inn: Vec<BTreeSet<usize>>,
    m: usize,
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        DiGraph { out: vec![BTreeSet::new(); n], inn: vec![BTreeSet::new(); n], m: 0 }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut d = DiGraph::empty(n);
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let mut d = DiGraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.out[u].insert(v);
                    d.inn[v].insert(u);
                    d.m += 1;
                }
            }
        }
        d
    }

    /// `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        DiGraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.m
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.out[u].insert(v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.inn[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].iter().copied()
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().copied()
    }

    pub fn arcs(&self) -> Vec<Edge> {
        self.out.iter().enumerate().flat_map(|(u, s)| s.iter().map(move |&v| (u, v))).collect()
    }

    /// Minimum semidegree `min(d+(v), d-(v))` over all vertices.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n()).map(|v| self.out_degree(v).min(self.in_degree(v))).min().unwrap_or(0)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> DiGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut d = DiGraph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.out_neighbors(v) {
                if index[w] != usize::MAX {
                    d.add_arc(i, index[w]).expect("induced arcs are distinct");
                }
            }
        }
        d
    }
}

/// Degree classes of a graph relative to a far-threshold `eta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClasses {
    pub max_degree: usize,
    pub min_degree: usize,
    /// `V_δ`
    pub delta_set: Vec<usize>,
    /// `V_{δ+1}`
    pub delta_plus_one_set: Vec<usize>,
    /// `V_Δ`
    pub max_set: Vec<usize>,
    /// `W = V \ (V_δ ∪ V_Δ)`
    pub middle_set: Vec<usize>,
    /// `U = {v : Δ - d(v) >= η n}`
    pub far_set: Vec<usize>,
    /// `Δ - δ`
    pub gap: usize,
}

impl VertexClasses {
    /// `|V_δ ∪ V_{δ+1}|`
    pub fn low_count(&self) -> usize {
        let mut low: BTreeSet<usize> = self.delta_set.iter().copied().collect();
        low.extend(self.delta_plus_one_set.iter().copied());
        low.len()
    }
}

pub fn vertex_classes(g: &SimpleGraph, eta: Rational) -> Result<VertexClasses> {
    if !crate::rational::in_open_unit(eta) {
        return Err(Error::precondition(format!("eta must lie in (0,1), got {eta}")));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let max = g.max_degree();
    let min = g.min_degree();
    let pick = |pred: &dyn Fn(usize) -> bool| (0..n).filter(|&v| pred(v)).collect::<Vec<_>>();
    Ok(VertexClasses {
        max_degree: max,
        min_degree: min,
        delta_set: pick(&|v| g.degree(v) == min),
        delta_plus_one_set: pick(&|v| g.degree(v) == min + 1),
        max_set: pick(&|v| g.degree(v) == max),
        middle_set: pick(&|v| g.degree(v) != min && g.degree(v) != max),
        far_set: pick(&|v| at_least(max - g.degree(v), eta, n)),
        gap: max - min,
    })
}

/// A set of edges in which every vertex has degree at most two and no cycle
/// occurs, i.e. a disjoint union of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForest {
    pub host_n: usize,
    pub edges: Vec<Edge>,
}

impl LinearForest {
    pub fn new(host_n: usize, edges: Vec<Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| norm(u, v)).collect();
        edges.sort_unstable();
        LinearForest { host_n, edges }
    }

    /// Edges of a vertex sequence read as a path.
    pub fn from_path(host_n: usize, path: &[usize]) -> Self {
        LinearForest::new(host_n, path.windows(2).map(|w| (w[0], w[1])).collect())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// First defect found, or `None` when this is a linear forest.
    pub fn defect(&self) -> Option<ViolationKind> {
        let mut degree = vec![0usize; self.host_n];
        let mut uf = UnionFind::new(self.host_n);
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u >= self.host_n || v >= self.host_n || u == v {
                return Some(ViolationKind::ForeignEdge(u, v));
            }
            if !seen.insert(norm(u, v)) {
                return Some(ViolationKind::RepeatedEdge(u, v));
            }
            for w in [u, v] {
                degree[w] += 1;
                if degree[w] > 2 {
                    return Some(ViolationKind::DegreeThree(w));
                }
            }
            if !uf.union(u, v) {
                return Some(ViolationKind::Cycle(u, v));
            }
        }
        None
    }

    /// Components as vertex sequences, each read from one end to the other.
    /// Only meaningful for valid forests; isolated vertices are skipped.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); self.host_n];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut seen = vec![false; self.host_n];
        let mut out = Vec::new();
        for s in 0..self.host_n {
            if seen[s] || nbrs[s].len() != 1 {
                continue;
            }
            let mut path = vec![s];
            seen[s] = true;
            let mut cur = s;
            while let Some(&next) = nbrs[cur].iter().find(|&&w| !seen[w]) {
                seen[next] = true;
                path.push(next);
                cur = next;
            }
            out.push(path);
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForestDecomposition {
    pub forests: Vec<LinearForest>,
}

impl LinearForestDecomposition {
    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Edge absent from the host graph, a loop, or out of range.
    ForeignEdge(usize, usize),
    /// Edge listed twice, in one forest or across forests.
    RepeatedEdge(usize, usize),
    /// Host edge covered by no forest.
    MissingEdge(usize, usize),
    DegreeThree(usize),
    /// Edge whose insertion closes a cycle.
    Cycle(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Offending forest, `None` for coverage failures.
    pub forest: Option<usize>,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionVerdict {
    Valid,
    Invalid(Violation),
}

impl DecompositionVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, DecompositionVerdict::Valid)
    }
}

/// Checks that `d` partitions `E(g)` into linear forests.
pub fn validate_decomposition(g: &SimpleGraph, d: &LinearForestDecomposition) -> DecompositionVerdict {
    let mut covered = BTreeSet::new();
    for (i, forest) in d.forests.iter().enumerate() {
        let invalid = |kind| DecompositionVerdict::Invalid(Violation { forest: Some(i), kind });
        if forest.host_n != g.n() {
            if let Some(&(u, v)) = forest.edges.iter().find(|&&(u, v)| u >= g.n() || v >= g.n()) {
                return invalid(ViolationKind::ForeignEdge(u, v));
            }
        }
        for &(u, v) in &forest.edges {
            if !g.has_edge(u, v) {
                return invalid(ViolationKind::ForeignEdge(u, v));
            }
            if !covered.insert(norm(u, v)) {
                return invalid(ViolationKind::RepeatedEdge(u, v));
            }
        }
        let check = LinearForest { host_n: g.n(), edges: forest.edges.clone() };
        if let Some(kind) = check.defect() {
            return invalid(kind);
        }
    }
    if let Some((u, v)) = g.edges().into_iter().find(|e| !covered.contains(e)) {
        return DecompositionVerdict::Invalid(Violation { forest: None, kind: ViolationKind::MissingEdge(u, v) });
    }
    DecompositionVerdict::Valid
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn degree_profiles() {
        let p = SimpleGraph::complete(4).degree_profile().unwrap();
        assert_eq!((p.max, p.min, p.sorted), (3, 3, vec![3, 3, 3, 3]));
        let p = SimpleGraph::star(3).degree_profile().unwrap();
        assert_eq!((p.max, p.min, p.sorted), (3, 1, vec![1, 1, 1, 3]));
        let p = SimpleGraph::cycle(5).degree_profile().unwrap();
        assert_eq!((p.max, p.min, p.sorted), (2, 2, vec![2; 5]));
        assert!(matches!(SimpleGraph::empty(0).degree_profile(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn classes_of_regular_graph() {
        let c = vertex_classes(&SimpleGraph::complete(4), r("0.1")).unwrap();
        assert_eq!(c.max_set, vec![0, 1, 2, 3]);
        assert_eq!(c.delta_set, vec![0, 1, 2, 3]);
        assert!(c.middle_set.is_empty() && c.far_set.is_empty());
        assert_eq!(c.gap, 0);
    }

    #[test]
    fn classes_of_star_at_both_thresholds() {
        let star = SimpleGraph::star(3);
        // 2 < 0.6 * 4 = 2.4
        let c = vertex_classes(&star, r("0.6")).unwrap();
        assert_eq!(c.gap, 2);
        assert!(c.far_set.is_empty());
        // 2 >= 0.4 * 4 = 1.6
        let c = vertex_classes(&star, r("0.4")).unwrap();
        assert_eq!(c.far_set, vec![1, 2, 3]);
        // exactly at the threshold: 2 >= 0.5 * 4
        let c = vertex_classes(&star, r("0.5")).unwrap();
        assert_eq!(c.far_set, vec![1, 2, 3]);
        assert!(vertex_classes(&star, r("1")).is_err());
    }

    #[test]
    fn validation_accepts_matchings_and_rejects_cycles() {
        let c4 = SimpleGraph::cycle(4);
        let d = LinearForestDecomposition {
            forests: vec![LinearForest::new(4, vec![(0, 1), (2, 3)]), LinearForest::new(4, vec![(1, 2), (0, 3)])],
        };
        assert!(validate_decomposition(&c4, &d).is_valid());

        let whole = LinearForestDecomposition { forests: vec![LinearForest::new(4, c4.edges())] };
        match validate_decomposition(&c4, &whole) {
            DecompositionVerdict::Invalid(Violation { forest: Some(0), kind: ViolationKind::Cycle(..) }) => {}
            other => panic!("expected cycle witness, got {other:?}"),
        }
    }

    #[test]
    fn validation_names_missing_repeated_and_degree_three() {
        let k4 = SimpleGraph::complete(4);
        let d = LinearForestDecomposition { forests: vec![LinearForest::new(4, vec![(0, 1)])] };
        assert!(matches!(
            validate_decomposition(&k4, &d),
            DecompositionVerdict::Invalid(Violation { forest: None, kind: ViolationKind::MissingEdge(..) })
        ));
        let d = LinearForestDecomposition {
            forests: vec![LinearForest::new(4, vec![(0, 1)]), LinearForest::new(4, vec![(0, 1)])],
        };
        assert!(matches!(
            validate_decomposition(&k4, &d),
            DecompositionVerdict::Invalid(Violation { kind: ViolationKind::RepeatedEdge(0, 1), .. })
        ));
        let d = LinearForestDecomposition { forests: vec![LinearForest::new(4, vec![(0, 1), (0, 2), (0, 3)])] };
        assert!(matches!(
            validate_decomposition(&k4, &d),
            DecompositionVerdict::Invalid(Violation { kind: ViolationKind::DegreeThree(0), .. })
        ));
        let c4 = SimpleGraph::cycle(4);
        let d = LinearForestDecomposition { forests: vec![LinearForest::new(4, vec![(0, 2)])] };
        assert!(matches!(
            validate_decomposition(&c4, &d),
            DecompositionVerdict::Invalid(Violation { kind: ViolationKind::ForeignEdge(0, 2), .. })
        ));
    }

    #[test]
    fn every_two_path_split_of_k4_validates() {
        // K4 splits into two Hamilton paths in several ways; enumerate all
        // 2-colourings with 3 edges per side and keep those whose sides are paths.
        let k4 = SimpleGraph::complete(4);
        let edges = k4.edges();
        let mut accepted = 0;
        for mask in 0u32..(1 << 6) {
            if mask.count_ones() != 3 {
                continue;
            }
            let (a, b): (Vec<_>, Vec<_>) = edges.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
            let fa = LinearForest::new(4, a.into_iter().map(|(_, &e)| e).collect());
            let fb = LinearForest::new(4, b.into_iter().map(|(_, &e)| e).collect());
            let both_paths = fa.defect().is_none() && fb.defect().is_none();
            let d = LinearForestDecomposition { forests: vec![fa, fb] };
            assert_eq!(validate_decomposition(&k4, &d).is_valid(), both_paths);
            accepted += usize::from(both_paths);
        }
        // 12 Hamilton paths in K4, each with a path complement, counted per ordered split.
        assert_eq!(accepted, 12);
    }

    #[test]
    fn complements() {
        assert_eq!(SimpleGraph::complete(4).complement(), SimpleGraph::empty(4));
        assert_eq!(SimpleGraph::empty(3).complement(), SimpleGraph::complete(3));
        let c5c = SimpleGraph::cycle(5).complement();
        assert_eq!(c5c.regular_degree(), Some(2));
        assert!(c5c.is_connected());
        // the complement of C5 is the pentagram 0-2-4-1-3-0
        let pentagram = SimpleGraph::from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(c5c, pentagram);
    }

    #[test]
    fn edge_edits() {
        let g = SimpleGraph::complete(4).remove_edges(&[(0, 1)]).unwrap();
        assert_eq!(g.degree_profile().unwrap().sorted, vec![2, 2, 3, 3]);
        let g = SimpleGraph::cycle(4).add_edges(&[(0, 2)]).unwrap();
        assert_eq!(g.degree_profile().unwrap().sorted, vec![2, 2, 3, 3]);
        let mut g = SimpleGraph::complete(3).add_vertex();
        let edges: Vec<Edge> = (0..3).map(|v| (v, 3)).collect();
        g = g.add_edges(&edges).unwrap();
        assert_eq!(g, SimpleGraph::complete(4));

        assert!(matches!(SimpleGraph::cycle(4).remove_edges(&[(0, 2)]), Err(Error::MissingEdge(0, 2))));
        assert!(matches!(SimpleGraph::cycle(4).add_edges(&[(1, 0)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(SimpleGraph::empty(3).add_edges(&[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(SimpleGraph::empty(3).add_edges(&[(1, 3)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn forest_paths_read_end_to_end() {
        let f = LinearForest::new(6, vec![(0, 1), (1, 2), (4, 5)]);
        assert_eq!(f.paths(), vec![vec![0, 1, 2], vec![4, 5]]);
    }

    #[test]
    fn multigraph_bookkeeping() {
        let mut h = MultiGraph::empty(3);
        h.add_edge(0, 1).unwrap();
        h.add_edge(1, 0).unwrap();
        h.add_edge(1, 2).unwrap();
        assert_eq!(h.degrees(), vec![2, 3, 1]);
        assert_eq!(h.multiplicity(0, 1), 2);
        assert_eq!(h.max_multiplicity(), 2);
        assert!(h.add_edge(2, 2).is_err());
    }
}
