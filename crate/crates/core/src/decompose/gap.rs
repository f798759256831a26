//! Shrinking a large degree gap by removing Hamilton paths through the
//! maximum-degree vertices, two units of gap per path.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{PipelineParams, PipelineTrace};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{norm, Edge, LinearForest, SimpleGraph};
use crate::hamilton::{edge_disjoint_spanning_configs, ConfigSearch, Layout};
use crate::rational::{at_least, Rational};

const STAGE: &str = "gap_reduction";

/// Incremental state after iteration `i` (`i = 0` is the input).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopState {
    pub i: usize,
    pub x: Option<usize>,
    pub y: Option<usize>,
    /// `d_i(v)` for every vertex.
    pub d: Vec<usize>,
    pub g: usize,
    pub w: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub z: Vec<usize>,
    /// Vertices outside `U_i ∪ V_i ∪ Z_i`.
    pub star: Vec<usize>,
    /// Vertex set of the path removed in iteration `i`, endpoints `x`, `y`.
    pub path_vertices: Vec<usize>,
}

/// Classes recomputed from a degree vector alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScratchState {
    pub max: usize,
    pub min: usize,
    pub gap: usize,
    pub w: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub z: Vec<usize>,
    pub star: Vec<usize>,
}

impl ScratchState {
    /// Whether the classes match an incremental state.
    pub fn agrees_with(&self, s: &LoopState) -> bool {
        self.gap == s.g && self.w == s.w && self.u == s.u && self.v == s.v && self.z == s.z && self.star == s.star
    }
}

/// Degree classes taken from the actual maximum and minimum of `degrees`.
pub fn scratch_state(degrees: &[usize], eta: Rational, n: usize) -> ScratchState {
    let max = degrees.iter().copied().max().unwrap_or(0);
    let min = degrees.iter().copied().min().unwrap_or(0);
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<usize> { (0..degrees.len()).filter(|&v| f(degrees[v])).collect() };
    let u = pick(&|d| at_least(max - d, eta, n));
    let v = pick(&|d| d == min);
    let z = pick(&|d| d == min + 1);
    let star = pick(&|d| !(at_least(max - d, eta, n) || d == min || d == min + 1));
    ScratchState { max, min, gap: max - min, w: pick(&|d| min < d && d < max), u, v, z, star }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReduction {
    /// One Hamilton path per iteration, as single-path forests.
    pub paths: Vec<LinearForest>,
    pub residual: SimpleGraph,
    pub loop_states: Vec<LoopState>,
    pub layouts: Vec<Layout>,
}

fn state_from(i: usize, d: Vec<usize>, g: usize, max: usize, min: usize, eta: Rational) -> LoopState {
    let n = d.len();
    let top = max - 2 * i;
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<usize> { (0..n).filter(|&v| f(d[v])).collect() };
    let far = |x: usize| x <= top && at_least(top - x, eta, n);
    let u = pick(&|x| far(x));
    let v = pick(&|x| x == min);
    let z = pick(&|x| x == min + 1);
    let star = pick(&|x| !(far(x) || x == min || x == min + 1));
    let w = pick(&|x| min < x && x < top);
    LoopState { i, x: None, y: None, d, g, w, u, v, z, star, path_vertices: Vec::new() }
}

fn guard(s: &LoopState, eta: Rational, n: usize) -> bool {
    let low: BTreeSet<usize> = s.u.iter().chain(&s.v).chain(&s.z).copied().collect();
    s.g >= 3 && s.w.len() >= 2 && !at_least(low.len(), eta, n)
}

/// Runs the degree bookkeeping of the loop without realizing any path.
/// The first entry is the input state.
pub fn loop_bookkeeping(g: &SimpleGraph, eta: Rational) -> Vec<LoopState> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let (max, min) = (g.max_degree(), g.min_degree());
    let mut states = vec![state_from(0, g.degrees(), max - min, max, min, eta)];
    loop {
        let prev = states.last().expect("nonempty");
        if !guard(prev, eta, n) {
            return states;
        }
        let i = prev.i + 1;
        // two lowest-index middle vertices
        let (x, y) = (prev.w[0], prev.w[1]);
        let mut path_vertices = prev.star.clone();
        path_vertices.extend([x, y]);
        path_vertices.sort_unstable();
        path_vertices.dedup();
        let mut d = prev.d.clone();
        for &v in &path_vertices {
            d[v] -= if v == x || v == y { 1 } else { 2 };
        }
        let mut s = state_from(i, d, prev.g - 2, max, min, eta);
        s.x = Some(x);
        s.y = Some(y);
        s.path_vertices = path_vertices;
        states.push(s);
    }
}

/// Runs the loop on `g` and reports the trace even on failure.
pub fn gap_reduction(g: &SimpleGraph, params: &PipelineParams) -> (Result<GapReduction>, PipelineTrace) {
    let mut trace = PipelineTrace { parameters: Some(params.clone()), ..PipelineTrace::default() };
    let out = run(g, params, &params.budget(), &mut trace);
    (out, trace)
}

/// Per-vertex step usage allowed by `uses^2 <= eta n^2`.
fn within_quota(uses: usize, eta: Rational, n: usize) -> bool {
    let (p, q) = (*eta.numer() as u128, *eta.denom() as u128);
    let (c, n) = (uses as u128, n as u128);
    c * c * q <= p * n * n
}

struct Picker<'a> {
    g: &'a SimpleGraph,
    eta: Rational,
    /// Steps in which each vertex of the first star set was selected.
    steps: Vec<usize>,
    connector_uses: Vec<usize>,
    used_edges: BTreeSet<Edge>,
}

impl Picker<'_> {
    /// Lowest-index vertex of `pool` adjacent to `a` through an unused edge,
    /// outside `taken` and within quota.
    fn partner(&self, a: usize, pool: &[usize], taken: &BTreeSet<usize>) -> Option<usize> {
        let n = self.g.n();
        pool.iter().copied().find(|&b| {
            !taken.contains(&b) && self.g.has_edge(a, b) && !self.used_edges.contains(&norm(a, b)) && within_quota(self.steps[b] + 1, self.eta, n)
        })
    }
}

pub(crate) fn run(g: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> Result<GapReduction> {
    let n = g.n();
    let states = loop_bookkeeping(g, params.eta);
    if states.len() <= 1 {
        return Ok(GapReduction { paths: Vec::new(), residual: g.clone(), loop_states: states, layouts: Vec::new() });
    }
    trace.loop_states = states.clone();
    let s0: Vec<usize> = states[0].star.clone();
    let in_s0 = |v: usize| s0.binary_search(&v).is_ok();
    let mut picker = Picker { g, eta: params.eta, steps: vec![0; n], connector_uses: vec![0; n], used_edges: BTreeSet::new() };
    let mut layouts = Vec::new();
    // per step: x', y' and the vertices spliced through z1 z2
    let mut splices: Vec<(usize, usize, BTreeMap<Edge, usize>)> = Vec::new();
    for w in states.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let (x, y) = (cur.x.expect("set for i > 0"), cur.y.expect("set for i > 0"));
        let low: BTreeSet<usize> = prev.v.iter().chain(&prev.z).copied().collect();
        let pool: Vec<usize> = s0.iter().copied().filter(|v| !low.contains(v)).collect();
        let mut taken: BTreeSet<usize> = BTreeSet::new();
        let mut selected: Vec<usize> = Vec::new();
        let mut ends = [x, y];
        for (k, &t) in [x, y].iter().enumerate() {
            if in_s0(t) {
                taken.insert(t);
                continue;
            }
            let p = picker
                .partner(t, &pool, &taken.iter().chain([x, y].iter()).copied().collect())
                .ok_or_else(|| Error::stage(STAGE, format!("no substitute endpoint for vertex {t} in iteration {}", cur.i)))?;
            picker.used_edges.insert(norm(t, p));
            taken.insert(p);
            selected.push(p);
            ends[k] = p;
        }
        let mut layout_path = vec![ends[0], ends[1]];
        let mut forced = vec![norm(ends[0], ends[1])];
        let mut through = BTreeMap::new();
        for &zv in prev.star.iter().filter(|&&v| !in_s0(v) && v != x && v != y) {
            let mut pair = Vec::with_capacity(2);
            for _ in 0..2 {
                let mut blocked = taken.clone();
                blocked.extend([x, y]);
                let p = picker
                    .partner(zv, &pool, &blocked)
                    .ok_or_else(|| Error::stage(STAGE, format!("vertex {zv} cannot be matched into the first star set in iteration {}", cur.i)))?;
                picker.used_edges.insert(norm(zv, p));
                taken.insert(p);
                selected.push(p);
                pair.push(p);
            }
            layout_path.extend_from_slice(&pair);
            forced.push(norm(pair[0], pair[1]));
            through.insert(norm(pair[0], pair[1]), zv);
        }
        for &v in &selected {
            picker.steps[v] += 1;
        }
        let conns: Vec<usize> = pool.iter().copied().filter(|v| !taken.contains(v) && picker.connector_uses[*v] < 2).take(2).collect();
        if conns.len() < 2 {
            return Err(Error::stage(STAGE, format!("no connector vertices left in iteration {}", cur.i)));
        }
        for &v in &conns {
            picker.connector_uses[v] += 1;
        }
        let mut first = vec![conns[0]];
        first.extend(layout_path);
        first.push(conns[1]);
        let isolated: Vec<usize> = s0.iter().copied().filter(|v| low.contains(v) && *v != x && *v != y).collect();
        layouts.push(Layout { paths: vec![first, vec![conns[1], conns[0]]], isolated, forced });
        splices.push((ends[0], ends[1], through));
    }
    trace.notes.push(format!("gap reduction: {} iterations on a {}-vertex star set", layouts.len(), s0.len()));

    let local = |v: usize| s0.binary_search(&v).expect("layout vertex in the first star set");
    let host = g.induced_subgraph(&s0);
    let local_layouts: Vec<Layout> = layouts
        .iter()
        .map(|l| Layout {
            paths: l.paths.iter().map(|p| p.iter().map(|&v| local(v)).collect()).collect(),
            isolated: l.isolated.iter().map(|&v| local(v)).collect(),
            forced: l.forced.iter().map(|&(a, b)| (local(a), local(b))).collect(),
        })
        .collect();
    let sol = match edge_disjoint_spanning_configs(&host, &local_layouts, budget)? {
        ConfigSearch::Found(s) => s,
        ConfigSearch::Stuck { layout, budget_exhausted } => {
            return Err(Error::stage(STAGE, format!("layout {} not realizable (budget exhausted: {budget_exhausted})", layout + 1)));
        }
    };

    let mut paths = Vec::with_capacity(layouts.len());
    let mut residual = g.clone();
    for ((config, (xp, yp, through)), w) in sol.configs.iter().zip(&splices).zip(states.windows(2)) {
        let (prev, cur) = (&w[0], &w[1]);
        let (x, y) = (cur.x.expect("set"), cur.y.expect("set"));
        let mut edges: Vec<Edge> = config.paths.iter().flat_map(|cp| cp.path.windows(2).map(|e| norm(s0[e[0]], s0[e[1]]))).collect();
        drop_edge(&mut edges, norm(*xp, *yp))?;
        for (&(a, b), &zv) in through {
            drop_edge(&mut edges, (a, b))?;
            edges.push(norm(a, zv));
            edges.push(norm(zv, b));
        }
        if x != *xp {
            edges.push(norm(x, *xp));
        }
        if y != *yp {
            edges.push(norm(y, *yp));
        }
        let path = super::cases::walk(n, &edges, x, y).ok_or_else(|| Error::stage(STAGE, format!("iteration {} does not splice into a path", cur.i)))?;
        let mut vs = path.clone();
        vs.sort_unstable();
        if vs != cur.path_vertices {
            return Err(Error::stage(STAGE, format!("path of iteration {} misses its vertex set", cur.i)));
        }
        // every current maximum-degree vertex is internal
        let top = g.max_degree() - 2 * prev.i;
        if (0..n).any(|v| prev.d[v] == top && (v == x || v == y || !path.contains(&v))) {
            return Err(Error::stage(STAGE, format!("path of iteration {} skips a maximum-degree vertex", cur.i)));
        }
        let f = LinearForest::from_path(n, &path);
        residual = residual.remove_edges(&f.edges)?;
        if residual.degrees() != cur.d {
            return Err(Error::stage(STAGE, format!("residual degrees differ from the bookkeeping after iteration {}", cur.i)));
        }
        if !scratch_state(&cur.d, params.eta, n).agrees_with(cur) {
            return Err(Error::stage(STAGE, format!("recomputed classes differ after iteration {}", cur.i)));
        }
        paths.push(f);
    }
    let check = trace.record("gap_paths", g, Vec::new(), paths.clone())?;
    debug_assert_eq!(check, residual);
    Ok(GapReduction { paths, residual, loop_states: states, layouts })
}

fn drop_edge(edges: &mut Vec<Edge>, e: Edge) -> Result<()> {
    let i = edges.iter().position(|&f| f == e).ok_or_else(|| Error::stage(STAGE, format!("edge {e:?} missing from configuration")))?;
    edges.swap_remove(i);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::havel_hakimi;

    fn loop_instance() -> SimpleGraph {
        // one far vertex of degree 8, middle vertices at 10, the rest at 12
        let mut degrees = vec![12usize; 20];
        degrees[0] = 8;
        for d in &mut degrees[1..5] {
            *d = 10;
        }
        havel_hakimi(&degrees).unwrap()
    }

    #[test]
    fn no_iterations_outside_the_loop_regime() {
        let g = SimpleGraph::complete(6).remove_edges(&[(0, 1)]).unwrap();
        let (out, _) = gap_reduction(&g, &PipelineParams::default());
        let r = out.unwrap();
        assert!(r.paths.is_empty());
        assert_eq!(r.residual, g);
        assert_eq!(r.loop_states.len(), 1);
    }

    #[test]
    fn bookkeeping_matches_recomputation() {
        let g = loop_instance();
        let eta = PipelineParams::default().eta;
        let states = loop_bookkeeping(&g, eta);
        assert!(states.len() >= 2);
        for s in &states {
            assert!(scratch_state(&s.d, eta, g.n()).agrees_with(s), "{s:?}");
        }
    }

    #[test]
    fn removed_paths_are_hamilton_on_their_sets() {
        let g = loop_instance();
        let (out, trace) = gap_reduction(&g, &PipelineParams::default());
        let r = out.unwrap();
        assert_eq!(r.paths.len(), r.loop_states.len() - 1);
        for (f, s) in r.paths.iter().zip(&r.loop_states[1..]) {
            let ps = f.paths();
            assert_eq!(ps.len(), 1);
            let p = &ps[0];
            let ends = norm(p[0], p[p.len() - 1]);
            assert_eq!(ends, norm(s.x.unwrap(), s.y.unwrap()));
            let mut vs = p.clone();
            vs.sort_unstable();
            assert_eq!(vs, s.path_vertices);
        }
        assert_eq!(r.residual.degrees(), r.loop_states.last().unwrap().d);
        trace.replay(&g).unwrap();
    }

    #[test]
    fn quota() {
        let eta = Rational::new(1, 5);
        assert!(within_quota(8, eta, 20));
        assert!(!within_quota(9, eta, 20));
    }
}
