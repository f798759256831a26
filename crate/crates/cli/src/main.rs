//! `linforest` command-line entry point.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linforest::decompose::{decompose, la_exact_with_cap, DecomposeStatus, PipelineParams, Strategy, DEFAULT_ORACLE_CAP};
use linforest::expansion::{
    default_trials, is_robust_expander_exact_with_cap, is_robust_expander_sampled, ExpanderParams, DEFAULT_EXACT_CAP,
};
use linforest::hamilton::{hamilton_cycle, hamilton_decomposition_with_cap, hamilton_path, k_linkage, spanning_configuration, Layout, DEFAULT_DECOMPOSITION_CAP};
use linforest::harness::{run_experiment, standard_corpus, summarize_file, summary_csv, derive_seed, ExperimentConfig, Family, GeneratorSpec, RecordStatus, SummaryRow};
use linforest::io::{read_edge_list, read_graph6, write_edge_list};
use linforest::matching::deficiency_certificate_with_cap;
use linforest::realize::{havel_hakimi, realize_multigraph};
use linforest::{parse_rational, Budget, Error, LinearForestDecomposition, Rational, SearchOutcome, SimpleGraph};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "linforest", version, about = "Linear forest decompositions and supporting graph tools")]
struct Cli {
    /// Master seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Wall-clock budget for exact searches, in milliseconds.
    #[arg(long, global = true, env = "LINFOREST_BUDGET_MS")]
    budget_ms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from one of the instance families.
    Gen(GenArgs),
    /// Check robust expansion.
    CheckExpander(ExpanderArgs),
    /// Deficiency with a Berge-Tutte certificate.
    Deficiency(InputArg),
    /// Realize a degree sequence.
    Realize(RealizeArgs),
    /// Hamilton paths, cycles, decompositions and linkages.
    Hamilton(HamiltonArgs),
    /// Exact linear arboricity.
    La(LaArgs),
    /// Decompose into linear forests.
    Decompose(DecomposeArgs),
    /// Run a batch experiment and write JSON-lines records.
    Bench(BenchArgs),
    /// Aggregate a records file.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct InputArg {
    /// Edge-list or graph6 file, `-` for stdin.
    input: String,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckModeArg {
    Exact,
    Sampled,
}

#[derive(Args)]
struct ExpanderArgs {
    input: String,
    #[arg(long)]
    nu: String,
    #[arg(long)]
    tau: String,
    /// Defaults to exact up to the exact cap, sampled above.
    #[arg(long, value_enum)]
    mode: Option<CheckModeArg>,
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Args)]
struct RealizeArgs {
    /// Degrees, comma or space separated.
    #[arg(required = true, num_args = 1..)]
    degrees: Vec<String>,
    /// Allow parallel edges (loopless multigraph).
    #[arg(long)]
    multi: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HamiltonMode {
    Path,
    Cycle,
    Decompose,
    Linkage,
}

#[derive(Args)]
struct HamiltonArgs {
    input: String,
    #[arg(long, value_enum)]
    mode: HamiltonMode,
    /// Path endpoints.
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    /// Terminal pairs for linkage, as `a-b,c-d`.
    #[arg(long)]
    pairs: Option<String>,
    /// Layout JSON `{paths, isolated, forced}` for a spanning configuration.
    #[arg(long)]
    layout: Option<PathBuf>,
}

#[derive(Args)]
struct LaArgs {
    input: String,
    /// Largest order accepted without a budget.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct DecomposeArgs {
    input: String,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long)]
    k_max: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// One family; mixed corpus when omitted.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Records file.
    #[arg(long, default_value = "records.jsonl")]
    records: PathBuf,
}

#[derive(Args)]
struct SummarizeArgs {
    records: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OverCap { .. } => EXIT_RESOURCE,
            Error::Infeasible(_) | Error::Hypothesis(_) | Error::Stage { .. } => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

/// Output text plus the exit code it should end with.
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut text = report.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(report.code),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    cli.budget_ms.map(Budget::with_millis).unwrap_or_default()
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::CheckExpander(a) => check_expander(cli, a),
        Command::Deficiency(a) => deficiency(cli, a),
        Command::Realize(a) => realize(cli, a),
        Command::Hamilton(a) => hamilton(cli, a),
        Command::La(a) => la(cli, a),
        Command::Decompose(a) => run_decompose(cli, a),
        Command::Bench(a) => bench(cli, a),
        Command::Summarize(a) => summarize(cli, a),
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input}: {e}")))
    }
}

/// Edge list when the first content line has two tokens, graph6 otherwise.
fn load_graph(input: &str) -> Result<SimpleGraph, Failure> {
    let text = read_input(input)?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    match first {
        None => Err(usage(format!("{input} holds no graph"))),
        Some(l) if l.split_whitespace().count() >= 2 => Ok(read_edge_list(&text)?),
        Some(l) => Ok(read_graph6(l)?),
    }
}

fn rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|_| usage(format!("--{flag}: not a rational number: {text:?}")))
}

fn opt_rational(flag: &str, text: &Option<String>) -> Result<Option<Rational>, Failure> {
    text.as_deref().map(|t| rational(flag, t)).transpose()
}

fn family(name: &str) -> Result<Family, Failure> {
    name.parse().map_err(|_| {
        let all: Vec<&str> = Family::ALL.iter().map(|f| f.as_str()).collect();
        usage(format!("unknown family {name:?}; expected one of {}", all.join(", ")))
    })
}

fn to_json(v: &Value) -> String {
    serde_json::to_string(v).expect("json values serialize")
}

fn graph_output(format: Format, g: &SimpleGraph) -> String {
    match format {
        Format::Json => to_json(&json!(g)),
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in g.edges() {
                s.push_str(&format!("{u},{v}\n"));
            }
            s
        }
        Format::Edgelist => write_edge_list(g),
    }
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<Report, Failure> {
    let mut spec = GeneratorSpec::new(family(&a.family)?, a.n, cli.seed);
    spec.p = opt_rational("p", &a.p)?;
    spec.r = a.r;
    spec.eps = opt_rational("eps", &a.eps)?;
    let g = linforest::harness::generate(&spec)?;
    Ok(Report::ok(graph_output(cli.format, &g)))
}

fn check_expander(cli: &Cli, a: &ExpanderArgs) -> Result<Report, Failure> {
    let g = load_graph(&a.input)?;
    let p = ExpanderParams::new(rational("nu", &a.nu)?, rational("tau", &a.tau)?)?;
    let mode = a.mode.unwrap_or(if g.n() <= DEFAULT_EXACT_CAP { CheckModeArg::Exact } else { CheckModeArg::Sampled });
    let verdict = match mode {
        CheckModeArg::Exact => is_robust_expander_exact_with_cap(&g, p, DEFAULT_EXACT_CAP)?,
        CheckModeArg::Sampled => is_robust_expander_sampled(&g, p, a.trials.unwrap_or_else(|| default_trials(g.n())), cli.seed)?,
    };
    let code = if verdict.holds { 0 } else { EXIT_NEGATIVE };
    let text = match cli.format {
        Format::Csv => format!(
            "holds,mode,samples_checked,witness\n{},{},{},{}\n",
            verdict.holds,
            if mode == CheckModeArg::Exact { "exact" } else { "sampled" },
            verdict.samples_checked,
            verdict.witness.as_ref().map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default()
        ),
        _ => to_json(&json!(verdict)),
    };
    Ok(Report { text, code })
}

fn deficiency(cli: &Cli, a: &InputArg) -> Result<Report, Failure> {
    let g = load_graph(&a.input)?;
    let cert = deficiency_certificate_with_cap(&g, 20)?;
    let text = match cli.format {
        Format::Csv => format!("df,x_size,components\n{},{},{}\n", cert.df, cert.x_set.len(), cert.odd_components.len()),
        _ => to_json(&json!({ "df": cert.df, "X": cert.x_set, "components": cert.odd_components })),
    };
    Ok(Report::ok(text))
}

fn realize(cli: &Cli, a: &RealizeArgs) -> Result<Report, Failure> {
    let mut degrees = Vec::new();
    for tok in a.degrees.iter().flat_map(|s| s.split([',', ' ']).filter(|t| !t.is_empty())) {
        degrees.push(tok.parse::<usize>().map_err(|_| usage(format!("not a degree: {tok:?}")))?);
    }
    let (n, edges) = if a.multi {
        let h = realize_multigraph(&degrees)?;
        (h.n(), h.edges().to_vec())
    } else {
        let g = havel_hakimi(&degrees)?;
        (g.n(), g.edges())
    };
    let text = match cli.format {
        Format::Json => to_json(&json!({ "n": n, "edges": edges })),
        Format::Csv => std::iter::once("u,v".to_string()).chain(edges.iter().map(|(u, v)| format!("{u},{v}"))).collect::<Vec<_>>().join("\n"),
        Format::Edgelist => {
            let mut s = format!("{n} {}\n", edges.len());
            for (u, v) in &edges {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
    };
    Ok(Report::ok(text))
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once('-').ok_or_else(|| usage(format!("pair {t:?} is not of the form a-b")))?;
            let a = a.parse().map_err(|_| usage(format!("bad vertex in {t:?}")))?;
            let b = b.parse().map_err(|_| usage(format!("bad vertex in {t:?}")))?;
            Ok((a, b))
        })
        .collect()
}

fn outcome_report<T: serde::Serialize>(outcome: SearchOutcome<T>, key: &str) -> Report {
    let (status, code) = match &outcome {
        SearchOutcome::Found(_) => ("found", 0),
        SearchOutcome::NotFound => ("not_found", EXIT_NEGATIVE),
        SearchOutcome::Unknown => ("unknown", EXIT_RESOURCE),
    };
    let mut v = json!({ "status": status });
    if let SearchOutcome::Found(t) = outcome {
        v[key] = json!(t);
    }
    Report { text: to_json(&v), code }
}

fn hamilton(cli: &Cli, a: &HamiltonArgs) -> Result<Report, Failure> {
    let g = load_graph(&a.input)?;
    let b = budget(cli);
    Ok(match a.mode {
        HamiltonMode::Path => {
            let (x, y) = match (a.from, a.to) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(usage("path mode needs --from and --to")),
            };
            outcome_report(hamilton_path(&g, x, y, &b)?, "path")
        }
        HamiltonMode::Cycle => outcome_report(hamilton_cycle(&g, &b)?, "cycle"),
        HamiltonMode::Decompose => outcome_report(hamilton_decomposition_with_cap(&g, DEFAULT_DECOMPOSITION_CAP + 8, &b)?, "cycles"),
        HamiltonMode::Linkage => match (&a.layout, &a.pairs) {
            (Some(path), None) => {
                let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                let layout: Layout = serde_json::from_str(&text).map_err(|e| usage(format!("bad layout: {e}")))?;
                outcome_report(spanning_configuration(&g, &layout, &b)?, "configuration")
            }
            (None, Some(pairs)) => outcome_report(k_linkage(&g, &parse_pairs(pairs)?, &b)?, "paths"),
            _ => return Err(usage("linkage mode needs exactly one of --pairs and --layout")),
        },
    })
}

fn forests_json(d: &LinearForestDecomposition) -> Value {
    json!(d.forests.iter().map(|f| &f.edges).collect::<Vec<_>>())
}

fn forests_csv(d: &LinearForestDecomposition) -> String {
    let mut s = String::from("forest,u,v\n");
    for (i, f) in d.forests.iter().enumerate() {
        for (u, v) in &f.edges {
            s.push_str(&format!("{i},{u},{v}\n"));
        }
    }
    s
}

fn la(cli: &Cli, a: &LaArgs) -> Result<Report, Failure> {
    let g = load_graph(&a.input)?;
    let s = la_exact_with_cap(&g, a.cap, &budget(cli))?;
    let code = if s.optimal { 0 } else { EXIT_RESOURCE };
    let text = match cli.format {
        Format::Csv => forests_csv(&s.decomposition),
        _ => to_json(&json!({
            "count": s.count,
            "lower_bound": s.lower_bound,
            "optimal": s.optimal,
            "forests": forests_json(&s.decomposition),
        })),
    };
    Ok(Report { text, code })
}

fn run_decompose(cli: &Cli, a: &DecomposeArgs) -> Result<Report, Failure> {
    let g = load_graph(&a.input)?;
    let mut params = PipelineParams { seed: cli.seed, budget_ms: cli.budget_ms, ..PipelineParams::default() };
    if let Some(x) = opt_rational("nu", &a.nu)? {
        params.nu = x;
    }
    if let Some(x) = opt_rational("tau", &a.tau)? {
        params.tau = x;
    }
    if let Some(x) = opt_rational("eta", &a.eta)? {
        params.eta = x;
    }
    if let Some(x) = opt_rational("alpha", &a.alpha)? {
        params.alpha = x;
    }
    if let Some(k) = a.k_max {
        params.k_max = k;
    }
    let strategy: Strategy = a.strategy.parse().map_err(|_| usage(format!("--strategy: expected auto, oracle or pipeline, got {:?}", a.strategy)))?;
    let out = decompose(&g, &params, strategy);
    let status = match out.status {
        DecomposeStatus::Success => "success",
        DecomposeStatus::ExceedsBound => "exceeds_bound",
    };
    let code = if out.status == DecomposeStatus::Success { 0 } else { EXIT_NEGATIVE };
    let text = match cli.format {
        Format::Csv => forests_csv(&out.decomposition),
        _ => to_json(&json!({
            "count": out.count,
            "bound": out.bound,
            "route": out.route.as_str(),
            "forests": forests_json(&out.decomposition),
            "status": status,
            "attempts": out.trace.attempts,
        })),
    };
    Ok(Report { text, code })
}

fn bench(cli: &Cli, a: &BenchArgs) -> Result<Report, Failure> {
    let specs: Vec<GeneratorSpec> = match &a.family {
        None => standard_corpus(a.count, a.n, cli.seed),
        Some(name) => {
            let fam = family(name)?;
            let p = opt_rational("p", &a.p)?;
            let eps = opt_rational("eps", &a.eps)?;
            (0..a.count)
                .map(|i| GeneratorSpec { family: fam, n: a.n, p, r: a.r, eps, seed: derive_seed(cli.seed, i as u64) })
                .collect()
        }
    };
    let mut config = ExperimentConfig::default();
    config.params.seed = cli.seed;
    config.params.budget_ms = cli.budget_ms;
    let records = run_experiment(&specs, &config, &a.records)?;
    let rows = linforest::harness::summarize(&records);
    let failures = records.iter().filter(|r| r.status == RecordStatus::Error).count();
    let text = summary_text(cli.format, &rows, Some(a.records.as_path()));
    Ok(Report { text, code: if failures == 0 { 0 } else { EXIT_NEGATIVE } })
}

fn summarize(cli: &Cli, a: &SummarizeArgs) -> Result<Report, Failure> {
    let rows = summarize_file(&a.records)?;
    Ok(Report::ok(summary_text(cli.format, &rows, None)))
}

fn summary_text(format: Format, rows: &[SummaryRow], records: Option<&Path>) -> String {
    match format {
        Format::Json => {
            let mut v = json!({ "rows": rows });
            if let Some(p) = records {
                v["records"] = json!(p.display().to_string());
            }
            to_json(&v)
        }
        _ => summary_csv(rows),
    }
}
