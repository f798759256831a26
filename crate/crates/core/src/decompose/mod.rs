//! Linear forest decompositions: the exact oracle, the regular route, the
//! deficiency reduction, the degree-gap case pipeline and the top-level
//! dispatcher.

mod cases;
mod exact;
mod gap;
mod reduce;
mod regular;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, SearchOutcome};
use crate::error::{Error, Result};
use crate::expansion::{check_expander, ExpanderParams, DEFAULT_EXACT_CAP};
use crate::graph::{norm, validate_decomposition, Edge, LinearForest, LinearForestDecomposition, SimpleGraph};
use crate::hamilton::DEFAULT_DECOMPOSITION_CAP;
use crate::rational::{at_least, Rational};

pub use cases::{case_pipeline, classify, complete_low_clique, CaseClass};
pub use exact::{forests_fit, greedy_linear_forests, la_exact, la_exact_with_cap, la_lower_bound, ExactSolution, DEFAULT_ORACLE_CAP};
pub use gap::{gap_reduction, loop_bookkeeping, scratch_state, GapReduction, LoopState, ScratchState};
pub use reduce::{deficiency_of, deficiency_plan, reduce_to_regular, DeficiencyPlan, ReduceOptions, Reduction, DEFAULT_K_MAX};
pub use regular::{la_regular_expander, la_regular_with_cap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ExactOracle,
    RegularRoute,
    Case1,
    Case2,
    Case3,
    GapReduction,
    /// Budgeted colouring search at `ceil((Δ+1)/2)` forests.
    BoundedSearch,
    Greedy,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::ExactOracle => "exact_oracle",
            Route::RegularRoute => "regular_route",
            Route::Case1 => "case1",
            Route::Case2 => "case2",
            Route::Case3 => "case3",
            Route::GapReduction => "gap_reduction",
            Route::BoundedSearch => "bounded_search",
            Route::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Auto,
    Oracle,
    Pipeline,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "oracle" => Ok(Strategy::Oracle),
            "pipeline" => Ok(Strategy::Pipeline),
            other => Err(Error::precondition(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Thresholds and caps shared by all routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub nu: Rational,
    pub tau: Rational,
    pub eta: Rational,
    pub alpha: Rational,
    pub k_max: usize,
    pub df_cap: Option<usize>,
    /// Largest auxiliary graph handed to the Hamilton decomposition search.
    pub hamilton_cap: usize,
    pub oracle_cap: usize,
    /// Per-route wall-clock budget; `None` is unlimited.
    pub budget_ms: Option<u64>,
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            nu: Rational::new(1, 10),
            tau: Rational::new(1, 5),
            eta: Rational::new(1, 5),
            alpha: Rational::new(1, 2),
            k_max: DEFAULT_K_MAX,
            df_cap: None,
            hamilton_cap: DEFAULT_DECOMPOSITION_CAP + 8,
            oracle_cap: DEFAULT_ORACLE_CAP,
            budget_ms: None,
            seed: 0,
        }
    }
}

impl PipelineParams {
    pub fn budget(&self) -> Budget {
        self.budget_ms.map(Budget::with_millis).unwrap_or_default()
    }

    pub fn reduce_options(&self) -> ReduceOptions {
        ReduceOptions { k_max: self.k_max, df_cap: self.df_cap }
    }
}

/// One step of a pipeline: the residual is the previous residual plus
/// `added` minus the edges of `removed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub added: Vec<Edge>,
    pub removed: Vec<LinearForest>,
    pub residual: SimpleGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteAttempt {
    pub route: Route,
    pub ok: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    /// Route that produced the returned decomposition.
    pub route: Option<Route>,
    pub attempts: Vec<RouteAttempt>,
    pub stages: Vec<StageRecord>,
    pub parameters: Option<PipelineParams>,
    /// Edges added so that all vertices below the maximum degree are
    /// pairwise adjacent; stripped from the returned forests.
    pub added_clique_edges: Vec<Edge>,
    pub loop_states: Vec<LoopState>,
    pub notes: Vec<String>,
}

impl PipelineTrace {
    pub(crate) fn record(&mut self, stage: &str, before: &SimpleGraph, added: Vec<Edge>, removed: Vec<LinearForest>) -> Result<SimpleGraph> {
        let mut residual = before.add_edges(&added)?;
        for f in &removed {
            residual = residual.remove_edges(&f.edges)?;
        }
        self.stages.push(StageRecord { stage: stage.to_string(), added, removed, residual: residual.clone() });
        Ok(residual)
    }

    /// Replays every stage from `g` and checks each residual snapshot.
    pub fn replay(&self, g: &SimpleGraph) -> Result<()> {
        let mut cur = g.clone();
        for s in &self.stages {
            // snapshots taken on an auxiliary vertex set start a fresh chain
            if s.residual.n() != cur.n() {
                return Err(Error::precondition(format!("stage {} changes the vertex count", s.stage)));
            }
            cur = cur.add_edges(&s.added)?;
            for f in &s.removed {
                cur = cur.remove_edges(&f.edges)?;
            }
            if cur != s.residual {
                return Err(Error::precondition(format!("stage {} does not replay", s.stage)));
            }
        }
        Ok(())
    }

    pub(crate) fn attempt(&mut self, route: Route, outcome: &Result<LinearForestDecomposition>) {
        self.attempts.push(RouteAttempt {
            route,
            ok: outcome.is_ok(),
            reason: outcome.as_ref().err().map(ToString::to_string),
        });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeStatus {
    /// Valid and within `ceil((Δ+1)/2)` forests.
    Success,
    /// Valid but above the bound; only best-effort routes produce this.
    ExceedsBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeOutcome {
    pub decomposition: LinearForestDecomposition,
    pub count: usize,
    pub bound: usize,
    pub route: Route,
    pub status: DecomposeStatus,
    /// Whether the count is known to be minimum.
    pub optimal: bool,
    pub trace: PipelineTrace,
}

/// Whether `g` meets the pipeline hypotheses: minimum degree at least
/// `alpha n` and robust `(nu, tau)`-expansion.
pub fn pipeline_hypotheses(g: &SimpleGraph, params: &PipelineParams) -> Result<bool> {
    let n = g.n();
    if n < 2 || !at_least(g.min_degree(), params.alpha, n) {
        return Ok(false);
    }
    let p = ExpanderParams::new(params.nu, params.tau)?;
    Ok(check_expander(g, p, DEFAULT_EXACT_CAP, None, params.seed)?.holds)
}

/// Decomposes `g` into linear forests, trying the chosen routes in order and
/// degrading to the oracle and finally to a greedy colouring. The result
/// always validates against `g`.
pub fn decompose(g: &SimpleGraph, params: &PipelineParams, strategy: Strategy) -> DecomposeOutcome {
    let mut trace = PipelineTrace { parameters: Some(params.clone()), ..PipelineTrace::default() };
    let bound = crate::conjecture_bound(g.max_degree());
    let use_pipeline = match strategy {
        Strategy::Oracle => false,
        Strategy::Pipeline => true,
        Strategy::Auto => match pipeline_hypotheses(g, params) {
            Ok(true) => true,
            Ok(false) => {
                trace.notes.push("pipeline hypotheses fail; using the oracle".into());
                g.n() > params.oracle_cap
            }
            Err(e) => {
                trace.notes.push(format!("hypothesis check failed: {e}"));
                g.n() > params.oracle_cap
            }
        },
    };
    let mut result: Option<(LinearForestDecomposition, Route, bool)> = None;
    if use_pipeline && g.edge_count() > 0 {
        let (route, outcome) = run_pipeline(g, params, &mut trace);
        trace.attempt(route, &outcome);
        if let Ok(d) = outcome {
            result = accept(g, d, route, false, &mut trace);
        }
    }
    if result.is_none() && g.n() <= params.oracle_cap {
        let budget = params.budget();
        match la_exact_with_cap(g, params.oracle_cap, &budget) {
            Ok(s) => {
                trace.attempts.push(RouteAttempt {
                    route: Route::ExactOracle,
                    ok: true,
                    reason: (!s.optimal).then(|| "budget exhausted; count is an upper bound".to_string()),
                });
                result = accept(g, s.decomposition, Route::ExactOracle, s.optimal, &mut trace);
            }
            Err(e) => trace.attempts.push(RouteAttempt { route: Route::ExactOracle, ok: false, reason: Some(e.to_string()) }),
        }
    }
    // above the oracle cap a budgeted search aims straight at the bound
    if result.is_none() && g.n() > params.oracle_cap && params.budget_ms.is_some() && g.edge_count() > 0 {
        match forests_fit(g, bound, &params.budget()) {
            SearchOutcome::Found(d) => {
                trace.attempts.push(RouteAttempt { route: Route::BoundedSearch, ok: true, reason: None });
                result = accept(g, d, Route::BoundedSearch, false, &mut trace);
            }
            other => {
                let reason = if other.is_not_found() { "no decomposition within the bound" } else { "budget exhausted" };
                trace.attempts.push(RouteAttempt { route: Route::BoundedSearch, ok: false, reason: Some(reason.into()) });
            }
        }
    }
    let (decomposition, route, optimal) = result.unwrap_or_else(|| {
        let d = greedy_linear_forests(g, params.seed, 16);
        trace.attempts.push(RouteAttempt { route: Route::Greedy, ok: true, reason: None });
        (d, Route::Greedy, false)
    });
    trace.route = Some(route);
    let count = decomposition.len();
    let status = if count <= bound { DecomposeStatus::Success } else { DecomposeStatus::ExceedsBound };
    DecomposeOutcome { decomposition, count, bound, route, status, optimal, trace }
}

fn accept(
    g: &SimpleGraph,
    d: LinearForestDecomposition,
    route: Route,
    optimal: bool,
    trace: &mut PipelineTrace,
) -> Option<(LinearForestDecomposition, Route, bool)> {
    match validate_decomposition(g, &d) {
        crate::graph::DecompositionVerdict::Valid => Some((d, route, optimal)),
        crate::graph::DecompositionVerdict::Invalid(v) => {
            trace.notes.push(format!("{} produced an invalid decomposition: {v:?}", route.as_str()));
            None
        }
    }
}

fn run_pipeline(g: &SimpleGraph, params: &PipelineParams, trace: &mut PipelineTrace) -> (Route, Result<LinearForestDecomposition>) {
    let budget = params.budget();
    if g.regular_degree().is_some() {
        return (Route::RegularRoute, la_regular_with_cap(g, params.hamilton_cap, &budget));
    }
    let reduction = match gap::run(g, params, &budget, trace) {
        Ok(r) => r,
        Err(e) => return (Route::GapReduction, Err(e)),
    };
    if !reduction.paths.is_empty() {
        trace.attempts.push(RouteAttempt { route: Route::GapReduction, ok: true, reason: None });
    }
    let (route, rest) = cases::run(&reduction.residual, params, &budget, trace);
    let out = rest.map(|d| {
        let mut forests = reduction.paths;
        forests.extend(d.forests);
        LinearForestDecomposition { forests }
    });
    (route, out)
}

/// Keeps the edges of each cycle accepted by `keep`; every cycle must lose
/// at least one edge.
pub(crate) fn strip_cycles(n: usize, cycles: &[Vec<usize>], keep: impl Fn(Edge) -> bool) -> Result<Vec<LinearForest>> {
    cycles
        .iter()
        .map(|c| {
            let all = crate::hamilton::cycle_edges(c);
            let kept: Vec<Edge> = all.iter().copied().filter(|&e| keep(e)).collect();
            if kept.len() == all.len() {
                return Err(Error::stage("finish", "a Hamilton cycle avoids every auxiliary edge"));
            }
            Ok(LinearForest::new(n, kept))
        })
        .collect()
}

/// Restricts forests to edges accepted by `keep`, dropping empty ones.
pub(crate) fn restrict(n: usize, forests: Vec<LinearForest>, keep: impl Fn(Edge) -> bool) -> Vec<LinearForest> {
    forests
        .into_iter()
        .map(|f| LinearForest::new(n, f.edges.into_iter().filter(|&e| keep(e)).collect()))
        .filter(|f| !f.is_empty())
        .collect()
}

pub(crate) fn edge_set(edges: &[Edge]) -> BTreeSet<Edge> {
    edges.iter().map(|&(u, v)| norm(u, v)).collect()
}
