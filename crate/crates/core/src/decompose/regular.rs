//! Regular graphs: Hamilton decompositions turned into linear forests.

use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{norm, Edge, LinearForest, LinearForestDecomposition, SimpleGraph, UnionFind};
use crate::hamilton::{cycle_edges, hamilton_decomposition_with_cap, DEFAULT_DECOMPOSITION_CAP};
use crate::matching::max_matching;

const STAGE: &str = "regular_route";
/// Perfect matchings tried before the odd-degree route gives up.
const MATCHING_TRIES: usize = 32;

/// At most `ceil((r+1)/2)` linear forests for an `r`-regular graph.
///
/// Even `r`: `r/2` Hamilton cycles, each cut at one edge, the cut edges
/// forming one more forest. Odd `r`: a perfect matching `M` is removed, the
/// rest is decomposed into `(r-1)/2` Hamilton cycles and the cut edges are
/// chosen so that they join `M` into a single linear forest.
pub fn la_regular_expander(g: &SimpleGraph, budget: &Budget) -> Result<LinearForestDecomposition> {
    la_regular_with_cap(g, DEFAULT_DECOMPOSITION_CAP, budget)
}

pub fn la_regular_with_cap(g: &SimpleGraph, cap: usize, budget: &Budget) -> Result<LinearForestDecomposition> {
    let n = g.n();
    let r = g.regular_degree().ok_or_else(|| Error::precondition("graph is not regular"))?;
    match r {
        0 => return Ok(LinearForestDecomposition::default()),
        1 => return Ok(LinearForestDecomposition { forests: vec![LinearForest::new(n, g.edges())] }),
        _ => {}
    }
    if r % 2 == 0 {
        let cycles = decompose_or_fail(g, cap, budget)?;
        let cuts = choose_cuts(n, &[], &cycles).ok_or_else(|| Error::stage(STAGE, "no cut edges forming a linear forest"))?;
        return Ok(assemble(n, &cycles, &cuts, Vec::new()));
    }
    let mut last = Error::stage(STAGE, "no perfect matching");
    let mut tried = 0;
    for m in perfect_matchings(g) {
        tried += 1;
        if tried > MATCHING_TRIES {
            break;
        }
        let rest = g.remove_edges(&m)?;
        if !rest.is_connected() {
            last = Error::stage(STAGE, "removing the matching disconnects the graph");
            continue;
        }
        let cycles = match decompose_or_fail(&rest, cap, budget) {
            Ok(c) => c,
            Err(e @ Error::Stage { .. }) if !budget.exhausted() => {
                last = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        match choose_cuts(n, &m, &cycles) {
            Some(cuts) => return Ok(assemble(n, &cycles, &cuts, m)),
            None => last = Error::stage(STAGE, "matching cannot be extended by one edge per cycle"),
        }
    }
    Err(last)
}

fn decompose_or_fail(g: &SimpleGraph, cap: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    match hamilton_decomposition_with_cap(g, cap, budget)? {
        SearchOutcome::Found(c) => Ok(c),
        SearchOutcome::NotFound => Err(Error::stage(STAGE, "no Hamilton decomposition exists")),
        SearchOutcome::Unknown => Err(Error::stage(STAGE, "Hamilton decomposition search ran out of budget")),
    }
}

fn assemble(n: usize, cycles: &[Vec<usize>], cuts: &[Edge], base: Vec<Edge>) -> LinearForestDecomposition {
    let mut forests: Vec<LinearForest> = cycles
        .iter()
        .zip(cuts)
        .map(|(c, cut)| LinearForest::new(n, cycle_edges(c).into_iter().filter(|e| e != cut).collect()))
        .collect();
    let mut extra = base;
    extra.extend_from_slice(cuts);
    forests.push(LinearForest::new(n, extra));
    LinearForestDecomposition { forests }
}

/// One edge per cycle such that `base` plus the chosen edges is a linear
/// forest; edges disjoint from earlier choices are tried first.
pub(crate) fn choose_cuts(n: usize, base: &[Edge], cycles: &[Vec<usize>]) -> Option<Vec<Edge>> {
    let mut deg = vec![0u8; n];
    for &(u, v) in base {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut chosen = Vec::with_capacity(cycles.len());
    if pick(n, base, cycles, &mut deg, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn acyclic(n: usize, base: &[Edge], extra: &[Edge]) -> bool {
    let mut uf = UnionFind::new(n);
    base.iter().chain(extra).all(|&(u, v)| uf.union(u, v))
}

fn pick(n: usize, base: &[Edge], cycles: &[Vec<usize>], deg: &mut [u8], chosen: &mut Vec<Edge>) -> bool {
    let i = chosen.len();
    if i == cycles.len() {
        return true;
    }
    let mut cands: Vec<Edge> = cycle_edges(&cycles[i]).into_iter().filter(|&(u, v)| deg[u] < 2 && deg[v] < 2).collect();
    cands.sort_by_key(|&(u, v)| deg[u] + deg[v]);
    for e in cands {
        chosen.push(e);
        if acyclic(n, base, chosen) {
            deg[e.0] += 1;
            deg[e.1] += 1;
            if pick(n, base, cycles, deg, chosen) {
                return true;
            }
            deg[e.0] -= 1;
            deg[e.1] -= 1;
        }
        chosen.pop();
    }
    false
}

/// Perfect matchings of `g`, the blossom one first, then a lazy enumeration.
fn perfect_matchings(g: &SimpleGraph) -> impl Iterator<Item = Vec<Edge>> + '_ {
    let n = g.n();
    let first = max_matching(g);
    let first = (2 * first.len() == n).then(|| first.edges.clone());
    let seed = first.clone();
    first.into_iter().chain(PerfectMatchings::new(g).filter(move |m| Some(m) != seed.as_ref()))
}

struct PerfectMatchings<'a> {
    g: &'a SimpleGraph,
    stack: Vec<(Vec<Edge>, Vec<bool>)>,
}

impl<'a> PerfectMatchings<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let stack = if g.n() % 2 == 0 { vec![(Vec::new(), vec![false; g.n()])] } else { Vec::new() };
        PerfectMatchings { g, stack }
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Vec<Edge>;

    fn next(&mut self) -> Option<Vec<Edge>> {
        while let Some((m, covered)) = self.stack.pop() {
            let Some(u) = covered.iter().position(|&c| !c) else {
                let mut m = m;
                m.sort_unstable();
                return Some(m);
            };
            for v in self.g.neighbors(u).collect::<Vec<_>>().into_iter().rev() {
                if !covered[v] {
                    let mut m2 = m.clone();
                    m2.push(norm(u, v));
                    let mut c2 = covered.clone();
                    c2[u] = true;
                    c2[v] = true;
                    self.stack.push((m2, c2));
                }
            }
        }
        None
    }
}
