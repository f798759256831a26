//! Exact backtracking for Hamilton paths and cycles, Hamilton
//! decompositions, Hamilton linkages and spanning configurations of layouts.
//!
//! Every search reports `Found`, `NotFound` (the search space was exhausted)
//! or `Unknown` (the budget ran out first).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{norm, Edge, SimpleGraph};

pub const DEFAULT_DECOMPOSITION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    /// Search space below this node exhausted.
    Continue,
    /// The callback asked to stop.
    Stop,
    OutOfBudget,
}

/// Routes a list of terminal pairs through the free vertices so that every
/// free vertex is used exactly once as an internal vertex.
struct Linker<'a> {
    adj: &'a [u64],
    demands: &'a [(usize, usize)],
    free_left: u64,
    paths: Vec<Vec<usize>>,
    direct_used: Vec<Edge>,
    /// For each demand index, the endpoint mask of demands strictly after it.
    later_terminals: Vec<u64>,
    budget: &'a Budget,
}

impl<'a> Linker<'a> {
    fn new(adj: &'a [u64], demands: &'a [(usize, usize)], free: u64, budget: &'a Budget) -> Self {
        let k = demands.len();
        let mut later_terminals = vec![0u64; k + 1];
        for i in (0..k).rev() {
            let (s, t) = demands[i];
            later_terminals[i] = later_terminals[i + 1] | 1 << s | 1 << t;
        }
        // shift so that entry i covers demands i+1..
        later_terminals.remove(0);
        Linker { adj, demands, free_left: free, paths: Vec::with_capacity(k), direct_used: Vec::new(), later_terminals, budget }
    }

    fn run(&mut self, on_found: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> Flow {
        if self.demands.is_empty() {
            return if self.free_left == 0 && on_found(&[]) { Flow::Stop } else { Flow::Continue };
        }
        let s = self.demands[0].0;
        self.paths.push(vec![s]);
        let flow = self.dfs(0, s, on_found);
        self.paths.pop();
        flow
    }

    // Closure of `seeds` inside the free vertices.
    fn reach(&self, seeds: u64) -> u64 {
        let mut seen = seeds & self.free_left;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & self.free_left & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    fn hopeless(&self, di: usize, head: usize) -> bool {
        let t = self.demands[di].1;
        let connectors = 1u64 << head | 1u64 << t | self.later_terminals[di];
        let open = self.free_left | connectors;
        let mut rest = self.free_left;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[w] & open).count_ones() < 2 {
                return true;
            }
        }
        // every free vertex must hang off some terminal still to be routed
        let mut seeds = 0u64;
        let mut c = connectors;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            seeds |= self.adj[v];
        }
        if self.reach(seeds) != self.free_left {
            return true;
        }
        // the current target must be reachable from the head
        if self.adj[head] >> t & 1 == 1 {
            return false;
        }
        self.reach(self.adj[head]) & self.adj[t] == 0
    }

    fn dfs(&mut self, di: usize, head: usize, on_found: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> Flow {
        if !self.budget.tick() {
            return Flow::OutOfBudget;
        }
        let (s, t) = self.demands[di];
        if self.hopeless(di, head) {
            return Flow::Continue;
        }
        let can_finish = self.adj[head] >> t & 1 == 1 && (head != s || !self.direct_used.contains(&norm(s, t)));
        let last = di + 1 == self.demands.len();
        let finish_first = self.free_left == 0;
        if finish_first {
            return if can_finish { self.finish(di, head, on_found) } else { Flow::Continue };
        }
        let mut cands: Vec<(u32, usize)> = Vec::new();
        let mut m = self.adj[head] & self.free_left;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            cands.push(((self.adj[w] & self.free_left).count_ones(), w));
        }
        cands.sort_unstable();
        for (_, w) in cands {
            self.free_left &= !(1 << w);
            self.paths[di].push(w);
            let flow = self.dfs(di, w, on_found);
            self.paths[di].pop();
            self.free_left |= 1 << w;
            if flow != Flow::Continue {
                return flow;
            }
        }
        if can_finish && !last {
            return self.finish(di, head, on_found);
        }
        Flow::Continue
    }

    fn finish(&mut self, di: usize, head: usize, on_found: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> Flow {
        let (s, t) = self.demands[di];
        let direct = head == s;
        if direct {
            self.direct_used.push(norm(s, t));
        }
        self.paths[di].push(t);
        let flow = if di + 1 == self.demands.len() {
            if self.free_left == 0 && on_found(&self.paths) {
                Flow::Stop
            } else {
                Flow::Continue
            }
        } else {
            let next = self.demands[di + 1].0;
            self.paths.push(vec![next]);
            let f = self.dfs(di + 1, next, on_found);
            self.paths.pop();
            f
        };
        self.paths[di].pop();
        if direct {
            self.direct_used.pop();
        }
        flow
    }
}

fn masks_checked(g: &SimpleGraph) -> Result<Vec<u64>> {
    g.adjacency_masks().ok_or(Error::OverCap { n: g.n(), cap: 64, hint: "exact Hamilton searches use 64-bit vertex sets" })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn first_solution(adj: &[u64], demands: &[(usize, usize)], free: u64, budget: &Budget) -> SearchOutcome<Vec<Vec<usize>>> {
    let mut found = None;
    let flow = Linker::new(adj, demands, free, budget).run(&mut |paths| {
        found = Some(paths.to_vec());
        true
    });
    match flow {
        Flow::Stop => SearchOutcome::Found(found.expect("set before stopping")),
        Flow::Continue => SearchOutcome::NotFound,
        Flow::OutOfBudget => SearchOutcome::Unknown,
    }
}

/// A Hamilton path from `x` to `y`.
pub fn hamilton_path(g: &SimpleGraph, x: usize, y: usize, budget: &Budget) -> Result<SearchOutcome<Vec<usize>>> {
    let n = g.n();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::precondition("Hamilton path endpoints must differ"));
    }
    let adj = masks_checked(g)?;
    let free = full_mask(n) & !(1 << x) & !(1 << y);
    Ok(first_solution(&adj, &[(x, y)], free, budget).map(|mut p| p.remove(0)))
}

/// A Hamilton cycle as a vertex sequence starting at 0 (closing edge implied).
pub fn hamilton_cycle(g: &SimpleGraph, budget: &Budget) -> Result<SearchOutcome<Vec<usize>>> {
    let n = g.n();
    if n < 3 {
        return Ok(SearchOutcome::NotFound);
    }
    let adj = masks_checked(g)?;
    let nbrs: Vec<usize> = g.neighbors(0).collect();
    if nbrs.len() < 2 {
        return Ok(SearchOutcome::NotFound);
    }
    // any Hamilton cycle uses two edges at 0, so one of the first deg-1 of them
    for &a in &nbrs[..nbrs.len() - 1] {
        let mut adj_a = adj.clone();
        adj_a[0] &= !(1 << a);
        adj_a[a] &= !1;
        let free = full_mask(n) & !1 & !(1 << a);
        match first_solution(&adj_a, &[(0, a)], free, budget) {
            SearchOutcome::Found(mut p) => return Ok(SearchOutcome::Found(p.remove(0))),
            SearchOutcome::Unknown => return Ok(SearchOutcome::Unknown),
            SearchOutcome::NotFound => {}
        }
    }
    Ok(SearchOutcome::NotFound)
}

/// Vertex-disjoint paths joining each pair and covering every vertex.
pub fn k_linkage(g: &SimpleGraph, pairs: &[(usize, usize)], budget: &Budget) -> Result<SearchOutcome<Vec<Vec<usize>>>> {
    let n = g.n();
    if pairs.is_empty() {
        return Err(Error::precondition("k_linkage needs at least one pair"));
    }
    let mut terminals = 0u64;
    for &(s, t) in pairs {
        for v in [s, t] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if terminals >> v & 1 == 1 {
                return Err(Error::precondition(format!("vertex {v} appears twice among the terminals")));
            }
            terminals |= 1 << v;
        }
    }
    let adj = masks_checked(g)?;
    Ok(first_solution(&adj, pairs, full_mask(n) & !terminals, budget))
}

/// `r/2` edge-disjoint Hamilton cycles covering every edge of an `r`-regular
/// graph with `r` even.
pub fn hamilton_decomposition(g: &SimpleGraph, budget: &Budget) -> Result<SearchOutcome<Vec<Vec<usize>>>> {
    hamilton_decomposition_with_cap(g, DEFAULT_DECOMPOSITION_CAP, budget)
}

pub fn hamilton_decomposition_with_cap(g: &SimpleGraph, cap: usize, budget: &Budget) -> Result<SearchOutcome<Vec<Vec<usize>>>> {
    let n = g.n();
    let r = g.regular_degree().ok_or_else(|| Error::precondition("Hamilton decomposition needs a regular graph"))?;
    if r % 2 == 1 {
        return Err(Error::precondition(format!("degree {r} is odd")));
    }
    if n > cap.min(64) {
        return Err(Error::OverCap { n, cap: cap.min(64), hint: "raise the decomposition cap or use a smaller graph" });
    }
    if r == 0 {
        return Ok(SearchOutcome::Found(Vec::new()));
    }
    if n < 3 || !g.is_connected() {
        return Ok(SearchOutcome::NotFound);
    }
    let adj = masks_checked(g)?;
    let mut cycles = Vec::new();
    Ok(match decompose_rest(&adj, n, &mut cycles, budget) {
        Flow::Stop => SearchOutcome::Found(cycles),
        Flow::Continue => SearchOutcome::NotFound,
        Flow::OutOfBudget => SearchOutcome::Unknown,
    })
}

fn connected_masks(adj: &[u64], n: usize) -> bool {
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full_mask(n)
}

// The edge from 0 to its smallest remaining neighbour lies on some cycle of
// every decomposition, so the next cycle is taken to contain it.
fn decompose_rest(adj: &[u64], n: usize, cycles: &mut Vec<Vec<usize>>, budget: &Budget) -> Flow {
    if adj[0] == 0 {
        return Flow::Stop;
    }
    let m = adj[0].trailing_zeros() as usize;
    let mut without = adj.to_vec();
    without[0] &= !(1 << m);
    without[m] &= !1;
    let demands = [(m, 0)];
    let free = full_mask(n) & !1 & !(1 << m);
    let mut linker = Linker::new(&without, &demands, free, budget);
    let mut inner = Flow::Continue;
    let flow = linker.run(&mut |paths| {
        let path = &paths[0];
        let mut rest = adj.to_vec();
        let mut cycle = path.clone();
        cycle.reverse();
        for w in cycle.windows(2).chain(std::iter::once(&[cycle[cycle.len() - 1], cycle[0]][..])) {
            rest[w[0]] &= !(1 << w[1]);
            rest[w[1]] &= !(1 << w[0]);
        }
        if rest[0] != 0 && !connected_masks(&rest, n) {
            return false;
        }
        cycles.push(cycle);
        inner = decompose_rest(&rest, n, cycles, budget);
        if inner == Flow::Stop {
            return true;
        }
        cycles.pop();
        inner == Flow::OutOfBudget
    });
    match (flow, inner) {
        (Flow::Stop, Flow::OutOfBudget) => Flow::OutOfBudget,
        (f, _) => f,
    }
}

/// A path system `L` with forced edges `F ⊆ E(L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub paths: Vec<Vec<usize>>,
    #[serde(default)]
    pub isolated: Vec<usize>,
    #[serde(default)]
    pub forced: Vec<Edge>,
}

impl Layout {
    /// `E(L)` as a multiset, in path order, each edge oriented along its path.
    pub fn edges(&self) -> Vec<Edge> {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))).collect()
    }

    /// `V(L)`, sorted and deduplicated.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.paths.iter().flatten().chain(self.isolated.iter()).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Which layout edges are forced; each forced entry claims one occurrence.
    pub fn forced_flags(&self) -> Result<Vec<bool>> {
        let edges = self.edges();
        let mut flags = vec![false; edges.len()];
        for &(u, v) in &self.forced {
            let slot = (0..edges.len())
                .find(|&i| !flags[i] && norm(edges[i].0, edges[i].1) == norm(u, v))
                .ok_or_else(|| Error::precondition(format!("forced edge {u}-{v} is not an unclaimed edge of the layout")))?;
            flags[slot] = true;
        }
        Ok(flags)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for p in &self.paths {
            let mut seen = std::collections::BTreeSet::new();
            for &v in p {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if !seen.insert(v) {
                    return Err(Error::precondition(format!("vertex {v} repeated within a layout path")));
                }
            }
        }
        let in_paths: std::collections::BTreeSet<usize> = self.paths.iter().flatten().copied().collect();
        for &v in &self.isolated {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if in_paths.contains(&v) {
                return Err(Error::precondition(format!("isolated vertex {v} also lies on a layout path")));
            }
        }
        let flags = self.forced_flags()?;
        if flags.iter().all(|&f| f) {
            return Err(Error::precondition("a layout needs at least one edge that is not forced"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigPath {
    /// The layout edge `(u, v)` this path realizes.
    pub shape: Edge,
    /// Vertex sequence from `u` to `v`.
    pub path: Vec<usize>,
    pub forced: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningConfiguration {
    pub paths: Vec<ConfigPath>,
}

impl SpanningConfiguration {
    /// Host edges used, i.e. the edges of every non-forced path.
    pub fn host_edges(&self) -> Vec<Edge> {
        self.paths
            .iter()
            .filter(|p| !p.forced)
            .flat_map(|p| p.path.windows(2).map(|w| norm(w[0], w[1])))
            .collect()
    }
}

fn layout_search(
    adj: &[u64],
    n: usize,
    layout: &Layout,
    budget: &Budget,
    on_found: &mut dyn FnMut(SpanningConfiguration) -> bool,
) -> Result<Flow> {
    layout.validate(n)?;
    let edges = layout.edges();
    let flags = layout.forced_flags()?;
    let demands: Vec<(usize, usize)> = edges.iter().zip(&flags).filter(|(_, &f)| !f).map(|(&e, _)| e).collect();
    let terminals = layout.vertices().iter().fold(0u64, |m, &v| m | 1 << v);
    let free = full_mask(n) & !terminals;
    let mut linker = Linker::new(adj, &demands, free, budget);
    Ok(linker.run(&mut |paths| {
        let mut it = paths.iter();
        let config = SpanningConfiguration {
            paths: edges
                .iter()
                .zip(&flags)
                .map(|(&(u, v), &forced)| ConfigPath {
                    shape: (u, v),
                    path: if forced { vec![u, v] } else { it.next().expect("one path per demand").clone() },
                    forced,
                })
                .collect(),
        };
        on_found(config)
    }))
}

/// A spanning configuration of shape `(L, F)` in `g`.
pub fn spanning_configuration(g: &SimpleGraph, layout: &Layout, budget: &Budget) -> Result<SearchOutcome<SpanningConfiguration>> {
    let adj = masks_checked(g)?;
    let mut found = None;
    let flow = layout_search(&adj, g.n(), layout, budget, &mut |c| {
        found = Some(c);
        true
    })?;
    Ok(match flow {
        Flow::Stop => SearchOutcome::Found(found.expect("set before stopping")),
        Flow::Continue => SearchOutcome::NotFound,
        Flow::OutOfBudget => SearchOutcome::Unknown,
    })
}

/// Checks the defining properties of a spanning configuration.
pub fn configuration_defect(g: &SimpleGraph, layout: &Layout, config: &SpanningConfiguration) -> Option<String> {
    let edges = layout.edges();
    let flags = layout.forced_flags().ok()?;
    if config.paths.len() != edges.len() {
        return Some("one path per layout edge expected".into());
    }
    let layout_vertices = layout.vertices();
    let mut internal_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = std::collections::BTreeSet::new();
    for ((cp, &(u, v)), &forced) in config.paths.iter().zip(&edges).zip(&flags) {
        let p = &cp.path;
        if p.first() != Some(&u) || p.last() != Some(&v) || p.len() < 2 {
            return Some(format!("path for layout edge {u}-{v} has the wrong shape"));
        }
        if forced {
            if p.len() != 2 {
                return Some(format!("forced edge {u}-{v} must be kept verbatim"));
            }
            continue;
        }
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Some(format!("{}-{} is not a host edge", w[0], w[1]));
            }
            if !used.insert(norm(w[0], w[1])) {
                return Some(format!("host edge {}-{} used twice", w[0], w[1]));
            }
        }
        for &x in &p[1..p.len() - 1] {
            *internal_count.entry(x).or_default() += 1;
        }
    }
    let expected: Vec<usize> = (0..g.n()).filter(|v| layout_vertices.binary_search(v).is_err()).collect();
    let got: Vec<usize> = internal_count.keys().copied().collect();
    if got != expected || internal_count.values().any(|&c| c != 1) {
        return Some("internal vertices are not exactly V \\ V(L), each once".into());
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSolution {
    pub configs: Vec<SpanningConfiguration>,
    /// Host minus every edge used by a configuration.
    pub residual: SimpleGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConfigSearch {
    Found(ConfigSolution),
    /// No solution; `layout` is the deepest layout that could not be placed.
    /// `budget_exhausted` distinguishes running out of budget from a proof.
    Stuck { layout: usize, budget_exhausted: bool },
}

/// Edge-disjoint spanning configurations for a list of layouts, solved in
/// order with backtracking into earlier layouts. Forced edges are external
/// and never consume host edges.
pub fn edge_disjoint_spanning_configs(g: &SimpleGraph, layouts: &[Layout], budget: &Budget) -> Result<ConfigSearch> {
    if layouts.is_empty() {
        return Err(Error::precondition("need at least one layout"));
    }
    let n = g.n();
    for l in layouts {
        l.validate(n)?;
    }
    let adj = masks_checked(g)?;
    let mut chosen = Vec::with_capacity(layouts.len());
    let mut deepest = 0;
    let flow = place(&adj, n, layouts, 0, &mut chosen, &mut deepest, budget)?;
    Ok(match flow {
        Flow::Stop => {
            let used: Vec<Edge> = chosen.iter().flat_map(SpanningConfiguration::host_edges).collect();
            let residual = g.remove_edges(&used)?;
            ConfigSearch::Found(ConfigSolution { configs: chosen, residual })
        }
        Flow::Continue => ConfigSearch::Stuck { layout: deepest, budget_exhausted: false },
        Flow::OutOfBudget => ConfigSearch::Stuck { layout: deepest, budget_exhausted: true },
    })
}

fn place(
    adj: &[u64],
    n: usize,
    layouts: &[Layout],
    i: usize,
    chosen: &mut Vec<SpanningConfiguration>,
    deepest: &mut usize,
    budget: &Budget,
) -> Result<Flow> {
    if i == layouts.len() {
        return Ok(Flow::Stop);
    }
    *deepest = (*deepest).max(i);
    let mut inner = Ok(Flow::Continue);
    let flow = layout_search(adj, n, &layouts[i], budget, &mut |config| {
        let mut rest = adj.to_vec();
        for (u, v) in config.host_edges() {
            rest[u] &= !(1 << v);
            rest[v] &= !(1 << u);
        }
        chosen.push(config);
        inner = place(&rest, n, layouts, i + 1, chosen, deepest, budget);
        match inner {
            Ok(Flow::Stop) => true,
            Ok(Flow::Continue) => {
                chosen.pop();
                false
            }
            _ => {
                chosen.pop();
                true
            }
        }
    })?;
    match (flow, inner) {
        (Flow::Stop, Ok(Flow::Stop)) => Ok(Flow::Stop),
        (Flow::Stop, other) => other,
        (f, _) => Ok(f),
    }
}

/// Path visits every vertex once, uses host edges and has the given ends.
pub fn is_hamilton_path(g: &SimpleGraph, path: &[usize], x: usize, y: usize) -> bool {
    let mut seen = vec![false; g.n()];
    path.len() == g.n()
        && path.first() == Some(&x)
        && path.last() == Some(&y)
        && path.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

pub fn is_hamilton_cycle(g: &SimpleGraph, cycle: &[usize]) -> bool {
    cycle.len() >= 3
        && is_hamilton_path(g, cycle, cycle[0], cycle[cycle.len() - 1])
        && g.has_edge(cycle[0], cycle[cycle.len() - 1])
}

pub fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    let k = cycle.len();
    (0..k).map(|i| norm(cycle[i], cycle[(i + 1) % k])).collect()
}

/// Cycles are Hamiltonian, pairwise edge-disjoint and cover `E(g)`.
pub fn is_hamilton_decomposition(g: &SimpleGraph, cycles: &[Vec<usize>]) -> bool {
    let mut all: Vec<Edge> = cycles.iter().flat_map(|c| cycle_edges(c)).collect();
    all.sort_unstable();
    cycles.iter().all(|c| is_hamilton_cycle(g, c)) && all == g.edges()
}

/// Paths are vertex-disjoint, join their pairs and cover every vertex.
pub fn is_linkage(g: &SimpleGraph, pairs: &[(usize, usize)], paths: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.n()];
    paths.len() == pairs.len()
        && paths.iter().zip(pairs).all(|(p, &(s, t))| {
            p.first() == Some(&s)
                && p.last() == Some(&t)
                && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && p.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        })
        && seen.iter().all(|&b| b)
}
