//! Command-line front end. [`run`] is the whole program minus process
//! setup, so tests can drive it with in-memory streams.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use crate::assignment::assignment_count_bound;
use crate::generate::{generate, random_connected, Family, FamilyKind};
use crate::graph::Graph;
use crate::mc::{self, kappa_for, optimize_weights, McWeights, WeightSearch};
use crate::oracle::{oracle_bandwidth, DEFAULT_ORACLE_LIMIT};
use crate::report::{
    AnalysisReport, BenchRecord, DecisionReport, InputDigest, Payload, ReportStatus, RunReport,
};
use crate::search::per_run_state_bound;
use crate::solver::{
    decide_any, minimize_bandwidth, Budget, Decision, DecideStats, SolveResult, SolverConfig,
    Status,
};

#[derive(Debug, Parser)]
#[command(name = "bandwidth", version, about = "Exact graph bandwidth solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the graph has an ordering of bandwidth at most b
    Decide {
        path: PathBuf,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compute the exact bandwidth and an optimal ordering
    Solve {
        path: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Exact bandwidth by exhaustive search (small graphs only)
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the state-count constraints, or search for the best weights
    Analyze {
        #[arg(long, requires = "beta")]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        beta: Option<f64>,
        #[arg(long, default_value_t = 0.005)]
        step: f64,
        #[arg(long, default_value_t = 1e-4)]
        fine_step: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated graph in edge-list format
    Gen {
        /// path, cycle, complete, star, gnp, tree or caterpillar
        family: String,
        /// Vertex count (spine length for caterpillars)
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pendant vertices per spine vertex of a caterpillar
        #[arg(long, default_value_t = 1)]
        legs: usize,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a generated corpus, one JSON line per instance
    Bench {
        /// small-suite or medium-suite
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Root vertex of the spanning tree
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// States one decision call may expand, across all of its runs
    #[arg(long)]
    pub max_states: Option<u64>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    pub time_limit: Option<f64>,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        let mut budget = Budget::default();
        if let Some(m) = self.max_states {
            budget.max_states_per_run = m;
            budget.max_states_total = Some(m);
        }
        budget.time_limit = self.time_limit.map(Duration::from_secs_f64);
        SolverConfig {
            root: self.root,
            workers: self.workers.max(1),
            budget,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let start = Instant::now();
    match execute(cli.command, &echo, start, out, err) {
        Ok(code) => code,
        Err(Failure { message, json }) => {
            if json {
                let report = RunReport {
                    command: echo,
                    status: ReportStatus::Error,
                    input: None,
                    result: None,
                    elapsed_ms: ms(start),
                    counters: None,
                    error: Some(message.clone()),
                };
                let _ = writeln!(out, "{}", report.to_json());
            }
            let _ = writeln!(err, "error: {message}");
            ReportStatus::Error.exit_code()
        }
    }
}

struct Failure {
    message: String,
    json: bool,
}

fn fail(json: bool) -> impl Fn(&dyn std::fmt::Display) -> Failure {
    move |e| Failure {
        message: e.to_string(),
        json,
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn load(path: &Path) -> Result<(Graph, InputDigest), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let g = Graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = InputDigest {
        path: path.display().to_string(),
        n: g.n(),
        m: g.m(),
    };
    Ok((g, digest))
}

fn execute(
    command: Command,
    echo: &str,
    start: Instant,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure {
        message: e.to_string(),
        json: false,
    };
    match command {
        Command::Decide {
            path,
            b,
            solver,
            json,
        } => {
            let (g, digest) = load(&path).map_err(|e| fail(json)(&e))?;
            if b >= g.n().max(1) {
                return Err(fail(json)(&format!("b must satisfy 0 <= b < n = {}", g.n())));
            }
            let (decision, stats) = decide_any(&g, b, &solver.config()).map_err(|e| fail(json)(&e))?;
            let (status, ordering, halt) = match decision {
                Decision::Yes(pi) => (ReportStatus::Yes, Some(pi), None),
                Decision::No => (ReportStatus::No, None, None),
                Decision::Unknown(h) => (ReportStatus::Unknown, None, Some(h)),
            };
            let report = RunReport {
                command: echo.to_string(),
                status,
                input: Some(digest),
                result: Some(Payload::Decision(DecisionReport { b, ordering, halt })),
                elapsed_ms: ms(start),
                counters: Some(stats),
                error: None,
            };
            emit(&report, json, out).map_err(io)?;
            Ok(status.exit_code())
        }
        Command::Solve { path, solver, json } => {
            let (g, digest) = load(&path).map_err(|e| fail(json)(&e))?;
            let result = minimize_bandwidth(&g, &solver.config()).map_err(|e| fail(json)(&e))?;
            let status = match result.status {
                Status::Optimal => ReportStatus::Optimal,
                Status::Unknown => ReportStatus::Unknown,
            };
            let counters = Some(result.stats.decide_calls.clone());
            let report = RunReport {
                command: echo.to_string(),
                status,
                input: Some(digest),
                result: Some(Payload::Solve(result)),
                elapsed_ms: ms(start),
                counters,
                error: None,
            };
            emit(&report, json, out).map_err(io)?;
            Ok(status.exit_code())
        }
        Command::Oracle { path, limit, json } => {
            let (g, digest) = load(&path).map_err(|e| fail(json)(&e))?;
            let result = oracle_bandwidth(&g, limit).map_err(|e| fail(json)(&e))?;
            let report = RunReport {
                command: echo.to_string(),
                status: ReportStatus::Optimal,
                input: Some(digest),
                result: Some(Payload::Solve(result)),
                elapsed_ms: ms(start),
                counters: None,
                error: None,
            };
            emit(&report, json, out).map_err(io)?;
            Ok(ReportStatus::Optimal.exit_code())
        }
        Command::Analyze {
            alpha,
            beta,
            step,
            fine_step,
            tol,
            json,
        } => {
            let analysis = match (alpha, beta) {
                (Some(a), Some(b)) => {
                    let w = McWeights::new(a, b).map_err(|e| fail(json)(&e))?;
                    AnalysisReport::new(&kappa_for(w, tol), None)
                }
                _ => {
                    let search = WeightSearch {
                        coarse_step: step,
                        fine_step,
                        tol,
                        ..WeightSearch::default()
                    };
                    let bound = optimize_weights(&search).map_err(|e| fail(json)(&e))?;
                    AnalysisReport::new(&bound, Some(fine_step.min(step)))
                }
            };
            let report = RunReport {
                command: echo.to_string(),
                status: ReportStatus::Optimal,
                input: None,
                result: Some(Payload::Analysis(analysis)),
                elapsed_ms: ms(start),
                counters: None,
                error: None,
            };
            emit(&report, json, out).map_err(io)?;
            Ok(ReportStatus::Optimal.exit_code())
        }
        Command::Gen {
            family,
            n,
            p,
            seed,
            legs,
            out: target,
        } => {
            let kind: FamilyKind = family.parse().map_err(|e| fail(false)(&e))?;
            let family = match kind {
                FamilyKind::Path => Family::Path { n },
                FamilyKind::Cycle => Family::Cycle { n },
                FamilyKind::Complete => Family::Complete { n },
                FamilyKind::Star => Family::Star {
                    leaves: n.saturating_sub(1),
                },
                FamilyKind::RandomGnp => Family::RandomGnp {
                    n,
                    p,
                    connected: false,
                },
                FamilyKind::RandomTree => Family::RandomTree { n },
                FamilyKind::Caterpillar => Family::Caterpillar { spine: n, legs },
            };
            let g = generate(family, seed).map_err(|e| fail(false)(&e))?;
            let text = g.to_edge_list();
            match target {
                Some(p) => fs::write(&p, text).map_err(|e| fail(false)(&format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Bench {
            suite,
            seed,
            solver,
        } => {
            let instances = suite_instances(&suite, seed).map_err(|e| fail(false)(&e))?;
            let config = solver.config();
            let mut violations = 0;
            for (name, g) in instances {
                let record = bench_instance(&suite, &name, &g, &config).map_err(|e| fail(false)(&e))?;
                if !record.within_ceiling {
                    violations += 1;
                }
                writeln!(out, "{}", serde_json::to_string(&record).expect("record serializes"))
                    .map_err(io)?;
            }
            if violations > 0 {
                let _ = writeln!(err, "{violations} instance(s) exceeded a ceiling");
            }
            Ok(0)
        }
    }
}

fn emit(report: &RunReport, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        return writeln!(out, "{}", report.to_json());
    }
    let Some(result) = &report.result else {
        return Ok(());
    };
    match result {
        Payload::Decision(d) => {
            let status = match report.status {
                ReportStatus::Yes => "yes",
                ReportStatus::No => "no",
                _ => "unknown",
            };
            write!(out, "{status}: bandwidth <= {}", d.b)?;
            match d.halt {
                Some(h) => writeln!(out, " undecided, budget exhausted ({h:?})")?,
                None => writeln!(out)?,
            }
            if let Some(pi) = &d.ordering {
                writeln!(out, "layout: {}", join(&pi.sequence()))?;
            }
        }
        Payload::Solve(r) => write_solve(r, out)?,
        Payload::Analysis(a) => {
            writeln!(out, "alpha = {}, beta = {}", a.alpha, a.beta)?;
            writeln!(out, "kappa = {:.6}", a.kappa)?;
            let names = ["leaf", "parent_unplaced", "parent_left", "parent_right"];
            for ((name, root), res) in names.iter().zip(a.roots).zip(a.residuals) {
                writeln!(out, "  {name:<16} root {root:.6}  residual {res:+.3e}")?;
            }
            let binding: Vec<String> = a.binding.iter().map(ToString::to_string).collect();
            writeln!(out, "binding: {}", binding.join(", "))?;
        }
    }
    if let Some(calls) = &report.counters {
        let states: u64 = calls.iter().map(|c| c.states_total).sum();
        let generated: u64 = calls.iter().map(|c| c.assignments_generated).sum();
        writeln!(
            out,
            "{} decision call(s), {generated} assignments, {states} states, {:.1} ms",
            calls.len(),
            report.elapsed_ms
        )?;
    }
    Ok(())
}

fn write_solve(r: &SolveResult, out: &mut dyn Write) -> std::io::Result<()> {
    match r.status {
        Status::Optimal => writeln!(out, "bandwidth {} (optimal)", r.bandwidth)?,
        Status::Unknown => writeln!(
            out,
            "bandwidth in [{}, {}] (budget exhausted)",
            r.lower_bound, r.bandwidth
        )?,
    }
    writeln!(out, "layout: {}", join(&r.ordering.sequence()))
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Named benchmark corpora. Every member is connected.
pub fn suite_instances(suite: &str, seed: u64) -> Result<Vec<(String, Graph)>, String> {
    let mut list = Vec::new();
    let mut push = |name: String, g: Result<Graph, crate::generate::GenerateError>| -> Result<(), String> {
        list.push((name, g.map_err(|e| e.to_string())?));
        Ok(())
    };
    match suite {
        "small-suite" => {
            for n in 2..=9 {
                push(format!("path-{n}"), generate(Family::Path { n }, 0))?;
            }
            for n in 3..=9 {
                push(format!("cycle-{n}"), generate(Family::Cycle { n }, 0))?;
            }
            for n in 2..=7 {
                push(format!("complete-{n}"), generate(Family::Complete { n }, 0))?;
            }
            for leaves in 2..=8 {
                push(format!("star-{leaves}"), generate(Family::Star { leaves }, 0))?;
            }
            for (spine, legs) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)] {
                push(
                    format!("caterpillar-{spine}x{legs}"),
                    generate(Family::Caterpillar { spine, legs }, 0),
                )?;
            }
            for n in 6..=9 {
                for s in seed..seed + 3 {
                    push(format!("tree-{n}-s{s}"), generate(Family::RandomTree { n }, s))?;
                    push(format!("gnp-{n}-s{s}"), random_connected(n, 0.35, s))?;
                }
            }
        }
        "medium-suite" => {
            for n in 10..=14 {
                for s in seed..seed + 3 {
                    push(format!("gnp-{n}-s{s}"), random_connected(n, 0.3, s))?;
                    push(format!("tree-{n}-s{s}"), generate(Family::RandomTree { n }, s))?;
                }
            }
        }
        other => return Err(format!("unknown suite {other:?} (expected small-suite or medium-suite)")),
    }
    Ok(list)
}

/// Solves one instance and checks its counters against the ceilings.
pub fn bench_instance(
    suite: &str,
    name: &str,
    g: &Graph,
    config: &SolverConfig,
) -> Result<BenchRecord, String> {
    let start = Instant::now();
    let n = g.n();
    let result = minimize_bandwidth(g, config).map_err(|e| e.to_string())?;
    let calls: &[DecideStats] = &result.stats.decide_calls;
    let leaves = match calls.first() {
        Some(c) => c.leaves,
        None if n >= 2 => g
            .spanning_tree(config.root.min(n - 1))
            .map_err(|e| e.to_string())?
            .leaf_count(),
        None => 0,
    };
    let oracle = (n <= DEFAULT_ORACLE_LIMIT)
        .then(|| oracle_bandwidth(g, DEFAULT_ORACLE_LIMIT).map(|r| r.bandwidth))
        .transpose()
        .map_err(|e| e.to_string())?;
    let assignments_generated = calls.iter().map(|c| c.assignments_generated).max().unwrap_or(0);
    let states_visited = calls.iter().map(|c| c.states_max_run).max().unwrap_or(0);
    let states_per_call = calls.iter().map(|c| c.states_total).max().unwrap_or(0);
    let assignment_ceiling = if n >= 1 { assignment_count_bound(n) } else { 0.0 };
    let ceiling = if n >= 1 { per_run_state_bound(n, leaves) } else { 0.0 };
    let call_ceiling = mc::total_state_bound(n, mc::STATE_BASE);
    let within_ceiling = assignments_generated as f64 <= assignment_ceiling
        && states_visited as f64 <= ceiling
        && states_per_call as f64 <= call_ceiling
        && oracle.is_none_or(|o| o == result.bandwidth);
    Ok(BenchRecord {
        suite: suite.to_string(),
        instance: name.to_string(),
        n,
        m: g.m(),
        leaves,
        bandwidth: result.bandwidth,
        status: match result.status {
            Status::Optimal => "optimal".into(),
            Status::Unknown => "unknown".into(),
        },
        oracle_bandwidth: oracle,
        decide_calls: calls.len(),
        assignments_generated,
        assignment_ceiling,
        states_visited,
        ceiling,
        states_per_call,
        call_ceiling,
        within_ceiling,
        elapsed_ms: ms(start),
    })
}
