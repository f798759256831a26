//! Exact linear arboricity by branch and bound over edge colourings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{Edge, LinearForest, LinearForestDecomposition, SimpleGraph};

pub const DEFAULT_ORACLE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSolution {
    pub count: usize,
    /// `max(ceil(Δ/2), ceil(m/(n-1)))`
    pub lower_bound: usize,
    pub decomposition: LinearForestDecomposition,
    /// False when the budget ran out; `count` is then only an upper bound.
    pub optimal: bool,
}

/// `max(ceil(Δ/2), ceil(m/(n-1)))`, zero for edgeless graphs.
pub fn la_lower_bound(g: &SimpleGraph) -> usize {
    let m = g.edge_count();
    if m == 0 {
        return 0;
    }
    crate::degree_lower_bound(g.max_degree()).max(m.div_ceil(g.n() - 1))
}

/// Minimum number of linear forests partitioning `E(g)`.
pub fn la_exact(g: &SimpleGraph, budget: &Budget) -> Result<ExactSolution> {
    la_exact_with_cap(g, DEFAULT_ORACLE_CAP, budget)
}

/// As [`la_exact`]; graphs above `cap` vertices are only accepted with a
/// limited budget.
pub fn la_exact_with_cap(g: &SimpleGraph, cap: usize, budget: &Budget) -> Result<ExactSolution> {
    if g.n() > cap && !budget.is_limited() {
        return Err(Error::OverCap { n: g.n(), cap, hint: "raise the oracle cap or give the search a budget" });
    }
    let lower_bound = la_lower_bound(g);
    let mut best = greedy_linear_forests(g, 0, 8);
    let mut optimal = true;
    for k in lower_bound..best.len() {
        match forests_fit(g, k, budget) {
            SearchOutcome::Found(d) => {
                best = d;
                break;
            }
            SearchOutcome::NotFound => {}
            SearchOutcome::Unknown => {
                optimal = false;
                break;
            }
        }
    }
    Ok(ExactSolution { count: best.len(), lower_bound, decomposition: best, optimal })
}

/// First-fit colouring into linear forests over several edge orders; the
/// best one found.
pub fn greedy_linear_forests(g: &SimpleGraph, seed: u64, restarts: usize) -> LinearForestDecomposition {
    let mut edges = g.edges();
    let mut best = first_fit(g.n(), &edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..restarts {
        edges.shuffle(&mut rng);
        let d = first_fit(g.n(), &edges);
        if d.len() < best.len() {
            best = d;
        }
    }
    best
}

fn first_fit(n: usize, edges: &[Edge]) -> LinearForestDecomposition {
    let mut state = ColourState::new(n, 0);
    let mut classes: Vec<Vec<Edge>> = Vec::new();
    for &(u, v) in edges {
        let c = (0..classes.len()).find(|&c| state.fits(c, u, v)).unwrap_or_else(|| {
            state.push_colour();
            classes.push(Vec::new());
            classes.len() - 1
        });
        state.assign(c, u, v);
        classes[c].push((u, v));
    }
    LinearForestDecomposition { forests: classes.into_iter().map(|e| LinearForest::new(n, e)).collect() }
}

/// Per-colour degrees and path endpoints.
struct ColourState {
    deg: Vec<Vec<u8>>,
    /// For an endpoint (or isolated vertex) of colour `c`, the other end of
    /// its path; stale for interior vertices.
    end: Vec<Vec<usize>>,
    n: usize,
}

struct Undo {
    c: usize,
    u: usize,
    v: usize,
    a: usize,
    old_a: usize,
    b: usize,
    old_b: usize,
}

impl ColourState {
    fn new(n: usize, k: usize) -> Self {
        let mut s = ColourState { deg: Vec::new(), end: Vec::new(), n };
        for _ in 0..k {
            s.push_colour();
        }
        s
    }

    fn push_colour(&mut self) {
        self.deg.push(vec![0; self.n]);
        self.end.push((0..self.n).collect());
    }

    fn fits(&self, c: usize, u: usize, v: usize) -> bool {
        self.deg[c][u] < 2 && self.deg[c][v] < 2 && self.end[c][u] != v
    }

    fn assign(&mut self, c: usize, u: usize, v: usize) -> Undo {
        let a = self.end[c][u];
        let b = self.end[c][v];
        let undo = Undo { c, u, v, a, old_a: self.end[c][a], b, old_b: self.end[c][b] };
        self.end[c][a] = b;
        self.end[c][b] = a;
        self.deg[c][u] += 1;
        self.deg[c][v] += 1;
        undo
    }

    fn revert(&mut self, x: Undo) {
        self.deg[x.c][x.u] -= 1;
        self.deg[x.c][x.v] -= 1;
        self.end[x.c][x.b] = x.old_b;
        self.end[x.c][x.a] = x.old_a;
    }
}

/// Partition of `E(g)` into at most `k` linear forests.
pub fn forests_fit(g: &SimpleGraph, k: usize, budget: &Budget) -> SearchOutcome<LinearForestDecomposition> {
    let n = g.n();
    let edges = g.edges();
    if edges.is_empty() {
        return SearchOutcome::Found(LinearForestDecomposition::default());
    }
    if k == 0 || edges.len() > k * (n - 1) || crate::degree_lower_bound(g.max_degree()) > k {
        return SearchOutcome::NotFound;
    }
    let mut incident = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push((i, v));
        incident[v].push((i, u));
    }
    let mut search = Fit {
        edges: &edges,
        incident,
        k,
        colour: vec![usize::MAX; edges.len()],
        state: ColourState::new(n, k),
        remaining: g.degrees(),
        class_size: vec![0; k],
        used: 0,
        left: edges.len(),
        budget,
    };
    match search.dfs() {
        Some(true) => {
            let mut classes = vec![Vec::new(); k];
            for (i, &c) in search.colour.iter().enumerate() {
                classes[c].push(edges[i]);
            }
            classes.retain(|c| !c.is_empty());
            SearchOutcome::Found(LinearForestDecomposition {
                forests: classes.into_iter().map(|e| LinearForest::new(n, e)).collect(),
            })
        }
        Some(false) => SearchOutcome::NotFound,
        None => SearchOutcome::Unknown,
    }
}

struct Fit<'a> {
    edges: &'a [Edge],
    /// `(edge index, other end)` per vertex.
    incident: Vec<Vec<(usize, usize)>>,
    k: usize,
    colour: Vec<usize>,
    state: ColourState,
    /// Uncoloured degree per vertex.
    remaining: Vec<usize>,
    class_size: Vec<usize>,
    /// Colours `0..used` are in use; the rest are interchangeable.
    used: usize,
    left: usize,
    budget: &'a Budget,
}

impl Fit<'_> {
    fn options(&self, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let (u, v) = self.edges[i];
        let n = self.state.n;
        for c in 0..self.used {
            if self.state.fits(c, u, v) && self.class_size[c] < n - 1 {
                out.push(c);
            }
        }
        if self.used < self.k {
            out.push(self.used);
        }
    }

    /// Uncoloured edges at `w` that colour `c` could still take, at most `cap`.
    fn fitting(&self, c: usize, w: usize, cap: usize) -> usize {
        self.incident[w].iter().filter(|&&(i, x)| self.colour[i] == usize::MAX && self.state.fits(c, w, x)).take(cap).count()
    }

    /// Local feasibility at `w`. Each colour takes at most
    /// `min(2 - deg, fitting)` of the uncoloured edges at `w`, and with
    /// `s` spare endpoint slots at `w` every colour must still gain
    /// `2 - deg - s` edges there.
    fn capacity_ok(&self, w: usize) -> bool {
        let free: Vec<usize> = (0..self.k).map(|c| 2 - self.state.deg[c][w] as usize).collect();
        let total: usize = free.iter().sum();
        if total < self.remaining[w] {
            return false;
        }
        let spare = total - self.remaining[w];
        let mut cap = 0;
        for c in 0..self.k {
            let f = self.fitting(c, w, free[c]);
            if f + spare < free[c] {
                return false;
            }
            cap += f;
        }
        cap >= self.remaining[w]
    }

    /// Colour `c` ends with `p_c` paths (isolated vertices included) and the
    /// `p_c - 1` summed over colours is fixed at `k n - m - k`. A used colour
    /// needs a separate path for every vertex it can no longer reach.
    fn components_ok(&self) -> bool {
        let n = self.state.n;
        let Some(allowed) = (self.k * n).checked_sub(self.edges.len() + self.k) else {
            return false;
        };
        let mut stranded = 0;
        for c in 0..self.used {
            for w in 0..n {
                if self.state.deg[c][w] == 0 && self.fitting(c, w, 1) == 0 {
                    stranded += 1;
                    if stranded > allowed {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn feasible(&self) -> bool {
        (0..self.state.n).all(|w| self.capacity_ok(w)) && self.components_ok()
    }

    // Some(true) found, Some(false) exhausted, None out of budget.
    fn dfs(&mut self) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        if self.left == 0 {
            return Some(true);
        }
        let spare: usize = (0..self.k).map(|c| self.state.n - 1 - self.class_size[c]).sum();
        if spare < self.left {
            return Some(false);
        }
        // most constrained uncoloured edge
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut buf = Vec::new();
        for i in 0..self.edges.len() {
            if self.colour[i] != usize::MAX {
                continue;
            }
            self.options(i, &mut buf);
            if buf.is_empty() {
                return Some(false);
            }
            if best.as_ref().is_none_or(|(_, o)| buf.len() < o.len()) {
                best = Some((i, buf.clone()));
                if buf.len() == 1 {
                    break;
                }
            }
        }
        let (i, opts) = best.expect("some edge is uncoloured");
        let (u, v) = self.edges[i];
        for c in opts {
            let fresh = c == self.used;
            if fresh {
                self.used += 1;
            }
            let undo = self.state.assign(c, u, v);
            self.colour[i] = c;
            self.class_size[c] += 1;
            self.remaining[u] -= 1;
            self.remaining[v] -= 1;
            self.left -= 1;
            let result = if self.feasible() { self.dfs() } else { Some(false) };
            if result == Some(true) {
                // keep the colouring for the caller
                return result;
            }
            self.left += 1;
            self.remaining[u] += 1;
            self.remaining[v] += 1;
            self.class_size[c] -= 1;
            self.colour[i] = usize::MAX;
            self.state.revert(undo);
            if fresh {
                self.used -= 1;
            }
            if result != Some(false) {
                return result;
            }
        }
        Some(false)
    }
}
