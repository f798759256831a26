//! The three-case pipeline for non-regular graphs whose sub-maximum-degree
//! vertices form a clique.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{edge_set, la_regular_with_cap, reduce_to_regular, restrict, strip_cycles, PipelineParams, PipelineTrace, Route};
use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{norm, validate_decomposition, vertex_classes, Edge, LinearForest, LinearForestDecomposition, SimpleGraph, VertexClasses};
use crate::hamilton::{edge_disjoint_spanning_configs, hamilton_decomposition_with_cap, hamilton_path, ConfigSearch, Layout};
use crate::matching::{complement_matching_almost_regular, max_matching};
use crate::rational::{at_least, Rational};
use crate::realize::case1_supergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseClass {
    Regular,
    /// Many far-below-maximum vertices, or a large gap with many vertices
    /// at or just above the minimum.
    Case1,
    /// Small gap with at least two middle vertices, or a moderate gap with
    /// many vertices at or just above the minimum.
    Case2,
    /// Few far vertices and at most one middle vertex.
    Case3,
    Unclassified,
}

/// First condition met, in the order 1, 2, 3.
pub fn classify(g: &SimpleGraph, eta: Rational) -> Result<CaseClass> {
    let c = vertex_classes(g, eta)?;
    Ok(classify_classes(&c, g.n(), eta))
}

pub(crate) fn classify_classes(c: &VertexClasses, n: usize, eta: Rational) -> CaseClass {
    let gap = c.gap;
    if gap == 0 {
        return CaseClass::Regular;
    }
    let many_far = at_least(c.far_set.len(), eta, n);
    let many_low = at_least(c.low_count(), eta, n);
    let big_gap = at_least(gap, eta, n);
    if many_far || (big_gap && many_low) {
        CaseClass::Case1
    } else if (gap <= 2 && c.middle_set.len() >= 2) || (gap > 1 && !big_gap && many_low) {
        CaseClass::Case2
    } else if c.middle_set.len() <= 1 {
        CaseClass::Case3
    } else {
        CaseClass::Unclassified
    }
}

/// Joins non-adjacent pairs of vertices below the maximum degree, scanning
/// pairs in lexicographic order, until those vertices are pairwise adjacent.
pub fn complete_low_clique(g: &SimpleGraph) -> (SimpleGraph, Vec<Edge>) {
    let max = g.max_degree();
    let mut h = g.clone();
    let mut added = Vec::new();
    loop {
        let low: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) < max).collect();
        let pair = low.iter().enumerate().find_map(|(i, &u)| low[i + 1..].iter().find(|&&v| !h.has_edge(u, v)).map(|&v| (u, v)));
        match pair {
            Some((u, v)) => {
                h.insert_edge(u, v).expect("pair is absent");
                added.push((u, v));
            }
            None => return (h, added),
        }
    }
}

/// Runs the case pipeline on `g` and reports the trace even on failure.
pub fn case_pipeline(g: &SimpleGraph, params: &PipelineParams) -> (Result<LinearForestDecomposition>, PipelineTrace) {
    let mut trace = PipelineTrace { parameters: Some(params.clone()), ..PipelineTrace::default() };
    let budget = params.budget();
    let (route, out) = run(g, params, &budget, &mut trace);
    trace.attempt(route, &out);
    if out.is_ok() {
        trace.route = Some(route);
    }
    (out, trace)
}

pub(crate) fn run(g: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> (Route, Result<LinearForestDecomposition>) {
    let (h, added) = complete_low_clique(g);
    trace.added_clique_edges = added.clone();
    if let Err(e) = trace.record("clique_completion", g, added.clone(), Vec::new()) {
        return (Route::Case1, Err(e));
    }
    let class = match classify(&h, params.eta) {
        Ok(c) => c,
        Err(e) => return (Route::Case1, Err(e)),
    };
    trace.notes.push(format!("case classification: {class:?}"));
    let (route, forests) = match class {
        CaseClass::Regular if added.is_empty() => {
            return (Route::RegularRoute, Err(Error::precondition("regular input; use the regular route")));
        }
        // completion made the graph regular
        CaseClass::Regular => (Route::RegularRoute, regular_after_completion(&h, params, budget, trace)),
        CaseClass::Unclassified => return (Route::Case3, Err(Error::precondition("graph meets none of the three case conditions"))),
        CaseClass::Case1 => (Route::Case1, case1(&h, params, budget, trace)),
        CaseClass::Case2 => (Route::Case2, case2(&h, params, budget, trace)),
        CaseClass::Case3 => (Route::Case3, case3(&h, params, budget, trace)),
    };
    let clique = edge_set(&added);
    let out = forests.and_then(|f| {
        let d = LinearForestDecomposition { forests: restrict(g.n(), f, |e| !clique.contains(&e)) };
        if !validate_decomposition(g, &d).is_valid() {
            return Err(Error::stage(route.as_str(), "forests do not partition the input"));
        }
        let bound = crate::conjecture_bound(g.max_degree());
        if d.len() > bound {
            return Err(Error::stage(route.as_str(), format!("{} forests exceed the bound {bound}", d.len())));
        }
        Ok(d)
    });
    (route, out)
}

fn regular_after_completion(h: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> Result<Vec<LinearForest>> {
    let forests = la_regular_with_cap(h, params.hamilton_cap, budget)?.forests;
    close(trace, h, &forests)?;
    Ok(forests)
}

/// Finishes on a regular auxiliary graph whose first `base_n` vertices carry
/// the current graph; edges leaving the base or in `aux_edges` are dropped.
fn finish(aux: &SimpleGraph, base_n: usize, aux_edges: &BTreeSet<Edge>, params: &PipelineParams, budget: &Budget) -> Result<Vec<LinearForest>> {
    let keep = |(u, v): Edge| u < base_n && v < base_n && !aux_edges.contains(&norm(u, v));
    let r = aux.regular_degree().ok_or_else(|| Error::stage("finish", "auxiliary graph is not regular"))?;
    if r % 2 == 1 {
        let d = la_regular_with_cap(aux, params.hamilton_cap, budget)?;
        return Ok(restrict(base_n, d.forests, keep));
    }
    match hamilton_decomposition_with_cap(aux, params.hamilton_cap, budget)? {
        SearchOutcome::Found(cycles) => {
            let forests = strip_cycles(base_n, &cycles, keep)?;
            Ok(forests.into_iter().filter(|f| !f.is_empty()).collect())
        }
        SearchOutcome::NotFound => Err(Error::stage("finish", "auxiliary graph has no Hamilton decomposition")),
        SearchOutcome::Unknown => Err(Error::stage("finish", "Hamilton decomposition search ran out of budget")),
    }
}

/// Records the final stage, which removes every remaining edge.
fn close(trace: &mut PipelineTrace, cur: &SimpleGraph, forests: &[LinearForest]) -> Result<()> {
    let residual = trace.record("regular_finish", cur, Vec::new(), forests.to_vec())?;
    if residual.edge_count() != 0 {
        return Err(Error::stage("finish", "edges left after the final decomposition"));
    }
    Ok(())
}

/// `G + M` plus an apex joined to every vertex of `joined`.
fn with_apex(g: &SimpleGraph, matching: &[Edge], joined: impl IntoIterator<Item = usize>) -> Result<(SimpleGraph, usize)> {
    let mut aux = g.add_edges(matching)?;
    let x = aux.push_vertex();
    for v in joined {
        aux.insert_edge(v, x)?;
    }
    Ok((aux, x))
}

fn covered(matching: &[Edge]) -> BTreeSet<usize> {
    matching.iter().flat_map(|&(u, v)| [u, v]).collect()
}

fn case1(g: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> Result<Vec<LinearForest>> {
    const STAGE: &str = "case1";
    let n = g.n();
    let max = g.max_degree();
    let mut forests = Vec::new();
    let mut gstar = g.clone();
    let mut delta_star = max;
    if max % 2 == 1 {
        // perfect matching, or one missing a minimum-degree vertex when n is odd
        let skip = (n % 2 == 1).then(|| g.degree_order()[0]);
        let rest: Vec<usize> = (0..n).filter(|&v| Some(v) != skip).collect();
        let m = max_matching(&g.induced_subgraph(&rest));
        if 2 * m.len() != rest.len() {
            return Err(Error::stage(STAGE, "no matching covering the required vertices"));
        }
        let m: Vec<Edge> = m.edges.iter().map(|&(a, b)| norm(rest[a], rest[b])).collect();
        let f = LinearForest::new(n, m);
        gstar = trace.record("odd_degree_matching", g, Vec::new(), vec![f.clone()])?;
        forests.push(f);
        delta_star = max - 1;
    }
    let emb = case1_supergraph(&gstar, delta_star).map_err(|e| Error::stage(STAGE, e.to_string()))?;
    trace.notes.push(format!("case1 supergraph: |X| = {}, host order {}", emb.x_set.len(), emb.host.n()));
    let rest = finish(&emb.host, n, &BTreeSet::new(), params, budget)?;
    close(trace, &gstar, &rest)?;
    forests.extend(rest);
    Ok(forests)
}

fn case2(g: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> Result<Vec<LinearForest>> {
    const STAGE: &str = "case2";
    let n = g.n();
    let max = g.max_degree();
    let order = g.degree_order();
    let df: Vec<usize> = order.iter().map(|&v| max - g.degree(v)).collect();
    let total: usize = df.iter().sum();
    let dominated = df[0] <= total - df[0];
    if total % 2 == 0 && dominated {
        let red = reduce_to_regular(g, max, params.reduce_options(), budget)?;
        let cur = trace.record("deficiency_forests", g, Vec::new(), red.forests.clone())?;
        let rest = la_regular_with_cap(&cur, params.hamilton_cap, budget)?.forests;
        close(trace, &cur, &rest)?;
        let mut forests = red.forests;
        forests.extend(rest);
        return Ok(forests);
    }
    // odd total deficiency: n and Δ odd, and the third deficiency is positive
    if !(total % 2 == 1 && dominated && n % 2 == 1 && max % 2 == 1 && n >= 3 && df[2] > 0) {
        return Err(Error::stage(STAGE, "parity branch entry conditions fail"));
    }
    let (v1, vn) = (order[0], order[n - 1]);
    let path = match hamilton_path(g, v1, vn, budget)? {
        SearchOutcome::Found(p) => p,
        SearchOutcome::NotFound => return Err(Error::stage(STAGE, "no Hamilton path between the extreme-degree vertices")),
        SearchOutcome::Unknown => return Err(Error::stage(STAGE, "Hamilton path search ran out of budget")),
    };
    let pf = LinearForest::from_path(n, &path);
    let g1 = trace.record("parity_path", g, Vec::new(), vec![pf.clone()])?;
    let red = reduce_to_regular(&g1, max - 2, params.reduce_options(), budget)?;
    let gstar = trace.record("deficiency_forests", &g1, Vec::new(), red.forests.clone())?;
    let l = red.forests.len();
    if max < 2 + 2 * l {
        return Err(Error::stage(STAGE, "too many deficiency forests"));
    }
    let r = max - 2 - 2 * l;
    let need = n - r - 2;
    let m = complement_part(STAGE, &gstar, vn, need)?;
    let cov = covered(&m);
    let (aux, _) = with_apex(&gstar, &m, (0..n).filter(|v| *v != vn && !cov.contains(v)))?;
    let rest = finish(&aux, n, &edge_set(&m), params, budget)?;
    close(trace, &gstar, &rest)?;
    let mut forests = vec![pf];
    forests.extend(red.forests);
    forests.extend(rest);
    Ok(forests)
}

/// Hamilton `(x, y)`-path of `g[domain]`, in global labels.
fn path_in(g: &SimpleGraph, domain: &[usize], x: usize, y: usize, budget: &Budget) -> Result<Option<Vec<usize>>> {
    let local = g.induced_subgraph(domain);
    let pos = |v: usize| domain.iter().position(|&w| w == v).expect("endpoint in domain");
    Ok(match hamilton_path(&local, pos(x), pos(y), budget)? {
        SearchOutcome::Found(p) => Some(p.into_iter().map(|i| domain[i]).collect()),
        SearchOutcome::NotFound => None,
        SearchOutcome::Unknown => return Err(Error::stage("case3", "Hamilton path search ran out of budget")),
    })
}

/// First `t/2` edges of the alternate-edge matching of `segment`.
fn segment_matching(segment: &[usize], t: isize, branch: &str) -> Result<Vec<Edge>> {
    if t < 0 || t % 2 == 1 || t as usize / 2 > segment.len() / 2 {
        return Err(Error::stage("case3", format!("{branch}: path segment of {} vertices cannot cover exactly {t}", segment.len())));
    }
    Ok((0..t as usize / 2).map(|j| norm(segment[2 * j], segment[2 * j + 1])).collect())
}

fn case3(g: &SimpleGraph, params: &PipelineParams, budget: &Budget, trace: &mut PipelineTrace) -> Result<Vec<LinearForest>> {
    const STAGE: &str = "case3";
    let n = g.n();
    let c = vertex_classes(g, params.eta)?;
    let (max, min, gap) = (c.max_degree, c.min_degree, c.gap);
    let low: BTreeSet<usize> = c.delta_set.iter().copied().collect();
    let w = c.middle_set.first().copied();
    let g0w = w.map(|w| g.degree(w) - min).unwrap_or(0);
    let h = gap.div_ceil(2);
    let top = &c.max_set;
    let w_first = w.is_some() && g0w % 2 == 1;
    if top.len() < 2 {
        return Err(Error::stage(STAGE, "fewer than two maximum-degree vertices"));
    }
    let (x1, y1) = if w_first { (w.unwrap(), top[0]) } else { (top[0], top[1]) };
    let domain: Vec<usize> = (0..n).filter(|v| !low.contains(v) && (w_first || Some(*v) != w)).collect();
    let u = path_in(g, &domain, x1, y1, budget)?.ok_or_else(|| Error::stage(STAGE, "no Hamilton path outside the minimum-degree vertices"))?;
    let p = u.len();
    if p < 2 * h {
        return Err(Error::stage(STAGE, "first path too short to host the endpoint pairs"));
    }
    // pairs for the remaining paths are consecutive vertices of the first path
    let pairs: Vec<(usize, usize)> = (2..=h).map(|i| (u[2 * i - 3], u[2 * i - 2])).collect();
    let mut z: BTreeSet<usize> = [u[0], u[p - 1]].into_iter().collect();
    z.extend(pairs.iter().flat_map(|&(a, b)| [a, b]));

    // G0 = G - V_δ - W - E(P1), on the vertices outside V_δ ∪ W
    let d0: Vec<usize> = (0..n).filter(|v| !low.contains(v) && Some(*v) != w).collect();
    let p1_edges = edge_set(&u.windows(2).map(|e| (e[0], e[1])).collect::<Vec<_>>());
    let mut used_w: BTreeSet<usize> = BTreeSet::new();
    if w_first {
        used_w.insert(u[1]);
    }
    let w_rounds = if w.is_some() && g0w >= 2 { (g0w + 1).div_ceil(2) } else { 1 };
    let mut connector_uses = vec![0u8; n];
    let mut layouts = Vec::with_capacity(pairs.len());
    let mut splices: Vec<Option<(usize, usize)>> = Vec::with_capacity(pairs.len());
    for (k, &(xi, yi)) in pairs.iter().enumerate() {
        let i = k + 2;
        let mut path = vec![xi, yi];
        let mut forced = vec![(xi, yi)];
        let mut splice = None;
        if let Some(w) = w.filter(|_| i <= w_rounds) {
            let picks: Vec<usize> = top
                .iter()
                .copied()
                .filter(|&v| v != xi && v != yi && g.has_edge(w, v) && !used_w.contains(&v))
                .take(2)
                .collect();
            if picks.len() < 2 {
                return Err(Error::stage(STAGE, format!("no fresh neighbours of the middle vertex for path {i}")));
            }
            used_w.extend(picks.iter().copied());
            path.extend_from_slice(&picks);
            forced.push((picks[0], picks[1]));
            splice = Some((picks[0], picks[1]));
        }
        let in_f: BTreeSet<usize> = path.iter().copied().collect();
        let conns: Vec<usize> = d0.iter().copied().filter(|v| !in_f.contains(v) && connector_uses[*v] < 2).take(2).collect();
        if conns.len() < 2 {
            return Err(Error::stage(STAGE, format!("no connector vertices left for path {i}")));
        }
        for &v in &conns {
            connector_uses[v] += 1;
        }
        let mut first = vec![conns[0]];
        first.extend(path);
        first.push(conns[1]);
        layouts.push(Layout { paths: vec![first, vec![conns[1], conns[0]]], isolated: Vec::new(), forced });
        splices.push(splice);
    }

    let mut paths = vec![u.clone()];
    if !layouts.is_empty() {
        let host = g.induced_subgraph(&d0).remove_edges(
            &p1_edges
                .iter()
                .filter(|&&(a, b)| d0.contains(&a) && d0.contains(&b))
                .map(|&(a, b)| (d0.iter().position(|&v| v == a).unwrap(), d0.iter().position(|&v| v == b).unwrap()))
                .collect::<Vec<_>>(),
        )?;
        let local = |v: usize| d0.iter().position(|&w| w == v).expect("layout vertex in G0");
        let local_layouts: Vec<Layout> = layouts
            .iter()
            .map(|l| Layout {
                paths: l.paths.iter().map(|p| p.iter().map(|&v| local(v)).collect()).collect(),
                isolated: Vec::new(),
                forced: l.forced.iter().map(|&(a, b)| (local(a), local(b))).collect(),
            })
            .collect();
        let sol = match edge_disjoint_spanning_configs(&host, &local_layouts, budget)? {
            ConfigSearch::Found(s) => s,
            ConfigSearch::Stuck { layout, budget_exhausted } => {
                return Err(Error::stage(STAGE, format!("layout {} not realizable (budget exhausted: {budget_exhausted})", layout + 2)));
            }
        };
        for ((config, &(xi, yi)), splice) in sol.configs.iter().zip(&pairs).zip(&splices) {
            let mut edges: Vec<Edge> = config.paths.iter().flat_map(|cp| cp.path.windows(2).map(|e| norm(d0[e[0]], d0[e[1]]))).collect();
            remove_one(&mut edges, norm(xi, yi))?;
            if let (Some((a, b)), Some(w)) = (splice, w) {
                remove_one(&mut edges, norm(*a, *b))?;
                edges.push(norm(*a, w));
                edges.push(norm(w, *b));
            }
            paths.push(walk(n, &edges, xi, yi).ok_or_else(|| Error::stage(STAGE, "spliced configuration is not a path"))?);
        }
    }
    let removed: Vec<LinearForest> = paths.iter().map(|p| LinearForest::from_path(n, p)).collect();
    let g1 = trace.record("case3_paths", g, Vec::new(), removed.clone())?;

    // degree pattern after removing the ceil(g/2) paths
    for v in 0..n {
        let expected = if low.contains(&v) || Some(v) == w {
            min
        } else if z.contains(&v) {
            max - 2 * h + 1
        } else {
            max - 2 * h
        };
        if g1.degree(v) != expected {
            return Err(Error::stage(STAGE, format!("vertex {v} has degree {} after path removal, expected {expected}", g1.degree(v))));
        }
    }
    let segment: Vec<usize> = u[2 * h - 1..p - 1].to_vec();
    // vertices one below the target degree; the endpoint set can hold the
    // middle vertex, which ends one lower than the other endpoints
    let level = if gap % 2 == 0 { min } else { min - 1 };
    let needy: Vec<usize> = (0..n).filter(|&v| g1.degree(v) == level).collect();
    if segment.iter().any(|v| needy.binary_search(v).is_err()) {
        return Err(Error::stage(STAGE, "path segment leaves the lowest degree class"));
    }
    let short = |r: usize| needy.len() as isize - r as isize;
    let rest = if gap % 2 == 0 {
        if max % 2 == 1 || n % 2 == 1 {
            // (δ+1)-regular after one apex
            let m = segment_matching(&segment, short(min + 1), "even gap, one apex")?;
            let cov = covered(&m);
            let (aux, _) = with_apex(&g1, &m, needy.iter().copied().filter(|v| !cov.contains(v)))?;
            finish(&aux, n, &edge_set(&m), params, budget)?
        } else {
            // Δ and n even: two apex vertices, (δ+2)-regular
            let m1 = segment_matching(&segment, short(min + 2), "even gap, two apices")?;
            let cov = covered(&m1);
            let (g2, x) = with_apex(&g1, &m1, needy.iter().copied().filter(|v| !cov.contains(v)))?;
            let m2 = complement_part(STAGE, &g2, x, n - min - 2)?;
            let cov2 = covered(&m2);
            let (aux, _) = with_apex(&g2, &m2, (0..=n).filter(|v| *v != x && !cov2.contains(v)))?;
            let mut aux_edges = edge_set(&m1);
            aux_edges.extend(edge_set(&m2));
            finish(&aux, n, &aux_edges, params, budget)?
        }
    } else if min % 2 == 0 {
        // δ even: one apex, δ-regular
        let m = segment_matching(&segment, short(min), "odd gap, even minimum")?;
        let cov = covered(&m);
        let (aux, _) = with_apex(&g1, &m, needy.iter().copied().filter(|v| !cov.contains(v)))?;
        finish(&aux, n, &edge_set(&m), params, budget)?
    } else if n % 2 == 0 {
        // δ odd, n even: an apex would give odd degree on an odd vertex
        // count, so the needy vertices are matched among themselves instead
        if needy.len() != segment.len() {
            return Err(Error::stage(STAGE, "odd gap, odd minimum, even order: needy vertices outside the segment"));
        }
        let m = segment_matching(&segment, segment.len() as isize, "odd gap, odd minimum, even order")?;
        let aux = g1.add_edges(&m)?;
        finish(&aux, n, &edge_set(&m), params, budget)?
    } else {
        // δ and n odd: near-perfect segment matching, one path edge, then an apex
        if needy.len() != segment.len() || segment.len() % 2 == 0 {
            return Err(Error::stage(STAGE, "odd gap, odd minimum, odd order: segment parity"));
        }
        let mut m1 = segment_matching(&segment, segment.len() as isize - 1, "odd gap, odd minimum, odd order")?;
        m1.push(norm(u[p - 2], u[p - 1]));
        let g2 = g1.add_edges(&m1)?;
        let up = u[p - 1];
        let m2 = complement_part(STAGE, &g2, up, n - min - 2)?;
        let cov2 = covered(&m2);
        let (aux, _) = with_apex(&g2, &m2, (0..n).filter(|v| *v != up && !cov2.contains(v)))?;
        let mut aux_edges = edge_set(&m1);
        aux_edges.extend(edge_set(&m2));
        finish(&aux, n, &aux_edges, params, budget)?
    };
    close(trace, &g1, &rest)?;
    let mut forests = removed;
    forests.extend(rest);
    Ok(forests)
}

/// A complement matching of an almost-regular graph avoiding `apex`,
/// trimmed to cover exactly `need` vertices.
fn complement_part(stage: &'static str, g: &SimpleGraph, apex: usize, need: usize) -> Result<Vec<Edge>> {
    let cm = complement_matching_almost_regular(g, apex).map_err(|e| Error::stage(stage, e.to_string()))?;
    if cm.covered < need || need % 2 == 1 {
        return Err(Error::stage(stage, format!("complement matching covers {} of the {need} vertices needed", cm.covered)));
    }
    Ok(cm.matching.edges[..need / 2].to_vec())
}

fn remove_one(edges: &mut Vec<Edge>, e: Edge) -> Result<()> {
    let i = edges.iter().position(|&f| f == e).ok_or_else(|| Error::stage("splice", format!("edge {e:?} missing from configuration")))?;
    edges.swap_remove(i);
    Ok(())
}

/// The path from `x` to `y` formed by `edges`, if they form exactly one.
pub(crate) fn walk(n: usize, edges: &[Edge], x: usize, y: usize) -> Option<Vec<usize>> {
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut path = vec![x];
    let mut prev = usize::MAX;
    let mut cur = x;
    while cur != y {
        let next: Vec<usize> = nbrs[cur].iter().copied().filter(|&v| v != prev).collect();
        if next.len() != 1 || path.len() > edges.len() {
            return None;
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
    (path.len() == edges.len() + 1 && nbrs[y].len() == 1 && edge_set(edges).len() == edges.len()).then_some(path)
}
