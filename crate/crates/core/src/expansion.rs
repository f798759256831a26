//! Robust expansion, one-sided quasirandomness, balanced orientations and
//! random digraph splits.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, Edge, SimpleGraph};
use crate::rational::{at_least_plus, at_most, ceil_mul, floor_mul, in_closed_unit, in_open_unit, to_f64, Rational};

pub const DEFAULT_EXACT_CAP: usize = 20;
pub const DEFAULT_REGULARITY_CAP: usize = 12;

/// `(ν, τ)` with `0 < ν <= τ < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderParams {
    pub nu: Rational,
    pub tau: Rational,
}

impl ExpanderParams {
    pub fn new(nu: Rational, tau: Rational) -> Result<Self> {
        if !in_open_unit(nu) || !in_open_unit(tau) || nu > tau {
            return Err(Error::precondition(format!("need 0 < nu <= tau < 1, got nu = {nu}, tau = {tau}")));
        }
        Ok(ExpanderParams { nu, tau })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub mode: CheckMode,
    pub samples_checked: u64,
}

/// Admissible sizes `ceil(τn) ..= floor((1-τ)n)`; may be empty.
pub fn admissible_sizes(n: usize, tau: Rational) -> (usize, usize) {
    let lo = ceil_mul(tau, n).max(0) as usize;
    let hi = floor_mul(Rational::from_integer(1) - tau, n).max(-1);
    (lo, if hi < 0 { 0 } else { hi as usize }.min(n))
}

/// `{v : |N(v) ∩ S| >= νn}`.
pub fn robust_neighborhood(g: &SimpleGraph, s: &[usize], nu: Rational) -> Vec<usize> {
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let need = need_count(nu, n);
    (0..n).filter(|&v| g.neighbors(v).filter(|&w| in_s[w]).count() as i64 >= need).collect()
}

/// `{v : v has at least νn in-neighbours in S}`.
pub fn robust_outneighborhood(d: &DiGraph, s: &[usize], nu: Rational) -> Vec<usize> {
    let n = d.n();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let need = need_count(nu, n);
    (0..n).filter(|&v| d.in_neighbors(v).filter(|&w| in_s[w]).count() as i64 >= need).collect()
}

// smallest integer count with count >= nu * n
fn need_count(nu: Rational, n: usize) -> i64 {
    ceil_mul(nu, n)
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Next subset of the same size in colex order.
#[inline]
fn gosper(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Enumerates every admissible set. `in_masks[v]` holds the vertices whose
/// membership in `S` counts toward `v`'s robust neighbourhood.
fn exhaustive_violator(in_masks: &[u64], nu: Rational, tau: Rational) -> (Option<u64>, u64) {
    let n = in_masks.len();
    let (lo, hi) = admissible_sizes(n, tau);
    if lo > hi || n == 0 {
        return (None, 0);
    }
    let need = need_count(nu, n).max(0) as u32;
    let results: Vec<(Option<u64>, u64)> = (lo..=hi)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                let rn = if need == 0 { n } else { 0 };
                return (if at_least_plus(rn, 0, nu, n) { None } else { Some(0) }, 1);
            }
            let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut s: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
            let mut checked = 0u64;
            loop {
                checked += 1;
                let rn = in_masks.iter().filter(|&&m| (m & s).count_ones() >= need).count();
                if !at_least_plus(rn, k, nu, n) {
                    return (Some(s), checked);
                }
                if k == n {
                    return (None, checked);
                }
                let next = gosper(s);
                if next > limit || next <= s {
                    return (None, checked);
                }
                s = next;
            }
        })
        .collect();
    let checked = results.iter().map(|r| r.1).sum();
    (results.into_iter().find_map(|r| r.0), checked)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(64);
    if n > cap {
        return Err(Error::OverCap { n, cap, hint: "use sampled mode for larger graphs" });
    }
    Ok(())
}

/// Exhaustive check of the robust `(ν, τ)`-expander condition.
pub fn is_robust_expander_exact(g: &SimpleGraph, p: ExpanderParams) -> Result<ExpansionVerdict> {
    is_robust_expander_exact_with_cap(g, p, DEFAULT_EXACT_CAP)
}

pub fn is_robust_expander_exact_with_cap(g: &SimpleGraph, p: ExpanderParams, cap: usize) -> Result<ExpansionVerdict> {
    expansion_exact_unchecked(g, p.nu, p.tau, cap)
}

/// Exhaustive check without the `0 < ν <= τ < 1` precondition. Degraded
/// parameters (`ν <= 0`, `τ >= 1/2`) are evaluated literally; an empty size
/// range holds vacuously.
pub fn expansion_exact_unchecked(g: &SimpleGraph, nu: Rational, tau: Rational, cap: usize) -> Result<ExpansionVerdict> {
    check_cap(g.n(), cap)?;
    let masks = g.adjacency_masks().expect("n <= 64 after cap check");
    let (violator, checked) = exhaustive_violator(&masks, nu, tau);
    Ok(ExpansionVerdict { holds: violator.is_none(), witness: violator.map(set_of), mode: CheckMode::Exact, samples_checked: checked })
}

pub fn is_robust_outexpander_exact(d: &DiGraph, p: ExpanderParams) -> Result<ExpansionVerdict> {
    is_robust_outexpander_exact_with_cap(d, p, DEFAULT_EXACT_CAP)
}

pub fn is_robust_outexpander_exact_with_cap(d: &DiGraph, p: ExpanderParams, cap: usize) -> Result<ExpansionVerdict> {
    check_cap(d.n(), cap)?;
    let in_masks: Vec<u64> = (0..d.n()).map(|v| d.in_neighbors(v).fold(0, |m, w| m | 1 << w)).collect();
    let (violator, checked) = exhaustive_violator(&in_masks, p.nu, p.tau);
    Ok(ExpansionVerdict { holds: violator.is_none(), witness: violator.map(set_of), mode: CheckMode::Exact, samples_checked: checked })
}

/// Default number of samples for sampled verification.
pub fn default_trials(n: usize) -> u64 {
    64 * n as u64
}

/// Samples admissible sets; a returned witness is a genuine violator, a
/// "holds" verdict is not a proof.
///
/// Even-numbered trials draw `S` uniformly; odd-numbered trials take the
/// first `k` vertices of a breadth-first order from a random root, which
/// finds the poorly connected sets that uniform samples almost never hit.
pub fn is_robust_expander_sampled(g: &SimpleGraph, p: ExpanderParams, trials: u64, seed: u64) -> Result<ExpansionVerdict> {
    let rn = |s: &[usize]| robust_neighborhood(g, s, p.nu).len();
    let ball = |root: usize, rng: &mut ChaCha8Rng| bfs_order(g.n(), root, rng, |v| g.neighbors(v).collect());
    sampled(g.n(), p, trials, seed, rn, ball)
}

pub fn is_robust_outexpander_sampled(d: &DiGraph, p: ExpanderParams, trials: u64, seed: u64) -> Result<ExpansionVerdict> {
    let rn = |s: &[usize]| robust_outneighborhood(d, s, p.nu).len();
    let ball = |root: usize, rng: &mut ChaCha8Rng| bfs_order(d.n(), root, rng, |v| d.out_neighbors(v).collect());
    sampled(d.n(), p, trials, seed, rn, ball)
}

// BFS from `root`, restarting at random unvisited vertices when a component
// is exhausted.
fn bfs_order(n: usize, root: usize, rng: &mut ChaCha8Rng, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut rest: Vec<usize> = (0..n).collect();
    rest.shuffle(rng);
    for start in std::iter::once(root).chain(rest) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut i = order.len();
        order.push(start);
        while i < order.len() {
            let mut next = nbrs(order[i]);
            next.shuffle(rng);
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

fn sampled(
    n: usize,
    p: ExpanderParams,
    trials: u64,
    seed: u64,
    rn: impl Fn(&[usize]) -> usize,
    ball: impl Fn(usize, &mut ChaCha8Rng) -> Vec<usize>,
) -> Result<ExpansionVerdict> {
    if trials == 0 {
        return Err(Error::precondition("trials must be at least 1"));
    }
    let (lo, hi) = admissible_sizes(n, p.tau);
    let mut verdict = ExpansionVerdict { holds: true, witness: None, mode: CheckMode::Sampled, samples_checked: 0 };
    if lo > hi {
        return Ok(verdict);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let k = rng.gen_range(lo..=hi);
        let mut s = if trial % 2 == 0 {
            index::sample(&mut rng, n, k).into_vec()
        } else {
            let root = rng.gen_range(0..n);
            let mut order = ball(root, &mut rng);
            order.truncate(k);
            order
        };
        s.sort_unstable();
        verdict.samples_checked += 1;
        if !at_least_plus(rn(&s), k, p.nu, n) {
            verdict.holds = false;
            verdict.witness = Some(s);
            break;
        }
    }
    Ok(verdict)
}

/// Picks exact mode up to `cap`, sampled mode above it.
pub fn check_expander(g: &SimpleGraph, p: ExpanderParams, cap: usize, trials: Option<u64>, seed: u64) -> Result<ExpansionVerdict> {
    if g.n() <= cap.min(64) {
        is_robust_expander_exact_with_cap(g, p, cap)
    } else {
        is_robust_expander_sampled(g, p, trials.unwrap_or_else(|| default_trials(g.n())), seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub mode: CheckMode,
    pub samples_checked: u64,
}

// e(S,T) >= (p - eps)|S||T|
fn pair_ok(e: usize, s: usize, t: usize, bound: Rational) -> bool {
    (e as i128) * (*bound.denom() as i128) >= (*bound.numer() as i128) * (s * t) as i128
}

/// Lower-`(p, ε)`-regularity: `e(S,T) >= (p-ε)|S||T|` for all disjoint `S`,
/// `T` with `|S|, |T| >= εn`. Exhaustive up to `DEFAULT_REGULARITY_CAP`
/// vertices, sampled above.
pub fn is_lower_regular(g: &SimpleGraph, p: Rational, eps: Rational, seed: u64) -> Result<RegularityVerdict> {
    if g.n() <= DEFAULT_REGULARITY_CAP {
        lower_regular_exact(g, p, eps)
    } else {
        lower_regular_sampled(g, p, eps, default_trials(g.n()), seed)
    }
}

pub fn lower_regular_exact(g: &SimpleGraph, p: Rational, eps: Rational) -> Result<RegularityVerdict> {
    check_regularity_params(p, eps)?;
    let n = g.n();
    check_cap(n, DEFAULT_REGULARITY_CAP.max(16))?;
    let bound = p - eps;
    let min_size = ceil_mul(eps, n).max(1) as usize;
    let masks = g.adjacency_masks().expect("capped");
    let mut checked = 0u64;
    // each vertex is in S (1), T (2) or neither (0)
    let total = 3u64.pow(n as u32);
    for code in 0..total {
        let (mut s, mut t, mut c) = (0u64, 0u64, code);
        for v in 0..n {
            match c % 3 {
                1 => s |= 1 << v,
                2 => t |= 1 << v,
                _ => {}
            }
            c /= 3;
        }
        let (ks, kt) = (s.count_ones() as usize, t.count_ones() as usize);
        if ks < min_size || kt < min_size || set_of(s)[0] > set_of(t)[0] {
            continue;
        }
        checked += 1;
        let e: usize = set_of(s).iter().map(|&v| (masks[v] & t).count_ones() as usize).sum();
        if !pair_ok(e, ks, kt, bound) {
            return Ok(RegularityVerdict { holds: false, witness: Some((set_of(s), set_of(t))), mode: CheckMode::Exact, samples_checked: checked });
        }
    }
    Ok(RegularityVerdict { holds: true, witness: None, mode: CheckMode::Exact, samples_checked: checked })
}

pub fn lower_regular_sampled(g: &SimpleGraph, p: Rational, eps: Rational, trials: u64, seed: u64) -> Result<RegularityVerdict> {
    check_regularity_params(p, eps)?;
    if trials == 0 {
        return Err(Error::precondition("trials must be at least 1"));
    }
    let n = g.n();
    let bound = p - eps;
    let min_size = ceil_mul(eps, n).max(1) as usize;
    let mut verdict = RegularityVerdict { holds: true, witness: None, mode: CheckMode::Sampled, samples_checked: 0 };
    if 2 * min_size > n {
        return Ok(verdict);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..trials {
        order.shuffle(&mut rng);
        let ks = rng.gen_range(min_size..=n - min_size);
        let kt = rng.gen_range(min_size..=n - ks);
        let mut s = order[..ks].to_vec();
        let mut t = order[ks..ks + kt].to_vec();
        s.sort_unstable();
        t.sort_unstable();
        verdict.samples_checked += 1;
        if !pair_ok(g.edges_between(&s, &t), ks, kt, bound) {
            verdict.holds = false;
            verdict.witness = Some((s, t));
            break;
        }
    }
    Ok(verdict)
}

fn check_regularity_params(p: Rational, eps: Rational) -> Result<()> {
    if !in_closed_unit(p) || !in_open_unit(eps) {
        return Err(Error::precondition(format!("need 0 <= p <= 1 and 0 < eps < 1, got p = {p}, eps = {eps}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientationReport {
    /// `max_v |d+(v) - d(v)/2|`
    pub max_half_deviation: f64,
    /// `max_v |d+(v) - d-(v)|`
    pub max_imbalance: usize,
}

/// Orients every edge so that `|d+(v) - d-(v)| <= 1` at every vertex.
///
/// Odd-degree vertices are paired by phantom edges, each component of the
/// resulting even multigraph is walked along an Euler circuit, and the
/// phantom edges are dropped. The seed only varies the pairing and the
/// circuit starts.
pub fn orient_balanced(g: &SimpleGraph, seed: u64) -> (DiGraph, OrientationReport) {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = g.edges();
    let mut all: Vec<Edge> = real.clone();
    let mut odd: Vec<usize> = (0..n).filter(|&v| g.degree(v) % 2 == 1).collect();
    odd.shuffle(&mut rng);
    for pair in odd.chunks(2) {
        all.push((pair[0], pair[1]));
    }
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in all.iter().enumerate() {
        inc[u].push((v, id));
        inc[v].push((u, id));
    }
    for list in &mut inc {
        list.shuffle(&mut rng);
    }
    let mut used = vec![false; all.len()];
    let mut ptr = vec![0usize; n];
    let mut d = DiGraph::empty(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.shuffle(&mut rng);
    for &start in &starts {
        // iterative Hierholzer; arcs follow the traversal direction
        let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
        while let Some(&(v, _)) = stack.last() {
            let mut advanced = false;
            while ptr[v] < inc[v].len() {
                let (w, id) = inc[v][ptr[v]];
                ptr[v] += 1;
                if !used[id] {
                    used[id] = true;
                    stack.push((w, Some(id)));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                let (w, via) = stack.pop().expect("non-empty");
                if let (Some(id), Some(&(u, _))) = (via, stack.last()) {
                    if id < real.len() {
                        d.add_arc(u, w).expect("each real edge oriented once");
                    }
                }
            }
        }
    }
    let report = orientation_report(g, &d);
    (d, report)
}

pub fn orientation_report(g: &SimpleGraph, d: &DiGraph) -> OrientationReport {
    let mut max_half_deviation: f64 = 0.0;
    let mut max_imbalance = 0;
    for v in 0..g.n() {
        let (out, inn) = (d.out_degree(v), d.in_degree(v));
        max_half_deviation = max_half_deviation.max((out as f64 - g.degree(v) as f64 / 2.0).abs());
        max_imbalance = max_imbalance.max(out.abs_diff(inn));
    }
    OrientationReport { max_half_deviation, max_imbalance }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    /// `|d+_{D1}(v) - λ d+_D(v)|` per vertex
    pub out_deviation: Vec<f64>,
    pub max_out_deviation: f64,
}

/// Sends each arc to the first part independently with probability `λ`.
pub fn split_digraph(d: &DiGraph, lambda: Rational, seed: u64) -> Result<(DiGraph, DiGraph, SplitReport)> {
    if !in_closed_unit(lambda) {
        return Err(Error::precondition(format!("lambda must lie in [0,1], got {lambda}")));
    }
    let n = d.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (num, den) = (*lambda.numer(), *lambda.denom());
    let exact = u32::try_from(den).is_ok();
    let mut d1 = DiGraph::empty(n);
    let mut d2 = DiGraph::empty(n);
    for (u, v) in d.arcs() {
        let first = if exact { rng.gen_ratio(num as u32, den as u32) } else { rng.gen::<f64>() < to_f64(lambda) };
        if first { d1.add_arc(u, v)? } else { d2.add_arc(u, v)? }
    }
    let lam = to_f64(lambda);
    let out_deviation: Vec<f64> = (0..n).map(|v| (d1.out_degree(v) as f64 - lam * d.out_degree(v) as f64).abs()).collect();
    let max_out_deviation = out_deviation.iter().copied().fold(0.0, f64::max);
    Ok((d1, d2, SplitReport { out_deviation, max_out_deviation }))
}

/// What a stability check removes from the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Removal {
    /// At most `εn` removed edges at each vertex.
    Edges(Vec<Edge>),
    /// At most `εn` vertices.
    Vertices(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub before: ExpansionVerdict,
    pub after: ExpansionVerdict,
    pub degraded_nu: Rational,
    pub degraded_tau: Rational,
    pub perturbed: Vec<Edge>,
    pub perturbed_n: usize,
}

impl StabilityVerdict {
    pub fn holds(&self) -> bool {
        self.after.holds
    }
}

/// Checks that an expander survives a bounded perturbation at the degraded
/// parameters `(ν-ε, τ)` for edge removal or `(ν-ε, 2τ)` for vertex removal.
pub fn stability_check(g: &SimpleGraph, p: ExpanderParams, eps: Rational, removal: &Removal) -> Result<StabilityVerdict> {
    if !in_open_unit(eps) {
        return Err(Error::precondition(format!("eps must lie in (0,1), got {eps}")));
    }
    let n = g.n();
    let before = is_robust_expander_exact(g, p)?;
    if !before.holds {
        return Err(Error::precondition("input graph is not a robust expander at the given parameters"));
    }
    let (perturbed, tau) = match removal {
        Removal::Edges(edges) => {
            let h = g.remove_edges(edges)?;
            for v in 0..n {
                let lost = g.degree(v) - h.degree(v);
                if !at_most(lost, eps, n) {
                    return Err(Error::precondition(format!("vertex {v} loses {lost} edges, more than eps*n")));
                }
            }
            (h, p.tau)
        }
        Removal::Vertices(vertices) => {
            let one = Rational::from_integer(1);
            let two = Rational::from_integer(2);
            if p.tau < (one + two * p.tau) * eps {
                return Err(Error::precondition("vertex removal needs tau >= (1 + 2 tau) eps"));
            }
            let mut gone = vec![false; n];
            for &v in vertices {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                gone[v] = true;
            }
            let removed = gone.iter().filter(|&&b| b).count();
            if !at_most(removed, eps, n) {
                return Err(Error::precondition(format!("{removed} vertices removed, more than eps*n")));
            }
            let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
            (g.induced_subgraph(&keep), two * p.tau)
        }
    };
    let nu = p.nu - eps;
    let after = expansion_exact_unchecked(&perturbed, nu, tau, DEFAULT_EXACT_CAP)?;
    Ok(StabilityVerdict { before, after, degraded_nu: nu, degraded_tau: tau, perturbed_n: perturbed.n(), perturbed: perturbed.edges() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpotCheckReport {
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub whole_graph: ExpansionVerdict,
}

impl SpotCheckReport {
    /// Whole digraph expands and the observed failure rate is at most `p`.
    pub fn passes(&self, p: Rational) -> bool {
        self.whole_graph.holds && self.failure_rate <= to_f64(p)
    }
}

/// Monte-Carlo estimate of how often a random induced subdigraph on
/// `k >= εn` vertices fails to be a robust outexpander.
pub fn outexpander_spot_check(d: &DiGraph, p: ExpanderParams, eps: Rational, trials: u64, seed: u64) -> Result<SpotCheckReport> {
    if trials == 0 {
        return Err(Error::precondition("trials must be at least 1"));
    }
    let n = d.n();
    let whole_graph = is_robust_outexpander_exact(d, p)?;
    let lo = (ceil_mul(eps, n).max(1) as usize).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let k = rng.gen_range(lo..=n);
        let mut s = index::sample(&mut rng, n, k).into_vec();
        s.sort_unstable();
        if !is_robust_outexpander_exact(&d.induced_subgraph(&s), p)?.holds {
            failures += 1;
        }
    }
    Ok(SpotCheckReport { trials, failures, failure_rate: failures as f64 / trials as f64, whole_graph })
}

/// Re-verifies a witness against the definition.
pub fn is_violator(g: &SimpleGraph, s: &[usize], p: ExpanderParams) -> bool {
    let n = g.n();
    let (lo, hi) = admissible_sizes(n, p.tau);
    let mask = mask_of(s);
    let distinct = mask.count_ones() as usize == s.len();
    distinct && (lo..=hi).contains(&s.len()) && !at_least_plus(robust_neighborhood(g, s, p.nu).len(), s.len(), p.nu, n)
}
