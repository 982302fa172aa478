//! Decision and minimization drivers on top of the two search phases.

use std::sync::atomic::AtomicBool;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assignment::{edge_filter, enumerate_assignments};
use crate::graph::{Graph, GraphError, Ordering};
use crate::search::{Halt, Limits, RunOutcome, SearchStats, Searcher};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Precondition(String),
    #[error("graph has {n} vertices, over the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Resource caps for a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Distinct states one Phase 2 run may expand.
    pub max_states_per_run: u64,
    /// States one decision call may expand, summed over its runs.
    pub max_states_total: Option<u64>,
    /// Entries one run's visited set may hold.
    pub max_visited: usize,
    /// Wall-clock limit for the whole call.
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states_per_run: 1 << 26,
            max_states_total: None,
            max_visited: 1 << 26,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Root of the BFS spanning tree (an original vertex label). Components
    /// that do not contain it use their smallest vertex.
    pub root: usize,
    /// Phase 2 runs executed concurrently. 1 is deterministic.
    pub workers: usize,
    pub budget: Budget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            root: 0,
            workers: 1,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Ordering),
    No,
    Unknown(Halt),
}

impl Decision {
    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Unknown(_) => "unknown",
        }
    }
}

/// Counters for one call of [`decide`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DecideStats {
    pub n: usize,
    pub b: usize,
    /// Leaves of the spanning tree used.
    pub leaves: usize,
    pub assignments_generated: u64,
    pub assignments_accepted: u64,
    pub runs: u64,
    pub states_total: u64,
    pub states_max_run: u64,
    pub visited_peak: usize,
    pub depth_max: usize,
    pub result: String,
    pub elapsed_ms: f64,
}

impl DecideStats {
    fn absorb(&mut self, run: &SearchStats) {
        self.runs += 1;
        self.states_total += run.states_visited;
        self.states_max_run = self.states_max_run.max(run.states_visited);
        self.visited_peak = self.visited_peak.max(run.visited_peak);
        self.depth_max = self.depth_max.max(run.depth_max);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    Unknown,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub assignments_generated: u64,
    pub assignments_accepted: u64,
    pub states_total: u64,
    pub states_max_run: u64,
    pub elapsed_ms: f64,
    /// One entry per decision call, across all components.
    pub decide_calls: Vec<DecideStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    /// Bandwidth of `ordering`; optimal when `status` is `Optimal`.
    pub bandwidth: usize,
    /// Proven lower bound; equals `bandwidth` when optimal.
    pub lower_bound: usize,
    pub ordering: Ordering,
    pub status: Status,
    pub stats: SolveStats,
}

/// Decides whether the connected graph `g` (`n ≥ 2`) has an ordering of
/// bandwidth at most `b`, for `1 ≤ b < n`.
pub fn decide(
    g: &Graph,
    b: usize,
    config: &SolverConfig,
) -> Result<(Decision, DecideStats), SolveError> {
    let deadline = config.budget.time_limit.map(|t| Instant::now() + t);
    decide_until(g, b, config.root, config, deadline)
}

fn decide_until(
    g: &Graph,
    b: usize,
    root: usize,
    config: &SolverConfig,
    deadline: Option<Instant>,
) -> Result<(Decision, DecideStats), SolveError> {
    let n = g.n();
    if n < 2 {
        return Err(SolveError::Precondition(format!("decide needs n >= 2, got {n}")));
    }
    if b == 0 || b >= n {
        return Err(SolveError::Precondition(format!("decide needs 1 <= b < n, got b = {b}, n = {n}")));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let start = Instant::now();
    let tree = g.spanning_tree(root)?;

    struct Shared<I> {
        stream: I,
        generated: u64,
        accepted: u64,
    }
    let shared = Mutex::new(Shared {
        stream: enumerate_assignments(&tree, b),
        generated: 0,
        accepted: 0,
    });
    let stop = AtomicBool::new(false);
    let found: Mutex<Option<Decision>> = Mutex::new(None);
    let totals = Mutex::new(DecideStats {
        n,
        b,
        leaves: tree.leaf_count(),
        ..DecideStats::default()
    });

    let worker = || {
        let mut searcher = Searcher::new(g, b);
        let limits = Limits {
            max_states: config.budget.max_states_per_run,
            max_visited: config.budget.max_visited,
            deadline,
            cancel: Some(&stop),
        };
        loop {
            if stop.load(std::sync::atomic::Ordering::Relaxed) {
                return;
            }
            let phi = {
                let mut s = shared.lock().unwrap();
                let mut next = None;
                while let Some(phi) = s.stream.next() {
                    s.generated += 1;
                    if edge_filter(&phi, g) {
                        s.accepted += 1;
                        next = Some(phi);
                        break;
                    }
                }
                next
            };
            let Some(phi) = phi else { return };
            let mut limits = limits;
            if let Some(cap) = config.budget.max_states_total {
                let used = totals.lock().unwrap().states_total;
                limits.max_states = limits.max_states.min(cap.saturating_sub(used));
            }
            let (outcome, run_stats) = searcher.run(&phi, &limits);
            totals.lock().unwrap().absorb(&run_stats);
            let verdict = match outcome {
                RunOutcome::Exhausted => continue,
                RunOutcome::Halted(Halt::Cancelled) => return,
                RunOutcome::Found(pi) => Decision::Yes(pi),
                RunOutcome::Halted(h) => Decision::Unknown(h),
            };
            let mut slot = found.lock().unwrap();
            // a witness outranks a budget stop from another worker
            if slot.is_none() || matches!(verdict, Decision::Yes(_)) && !matches!(*slot, Some(Decision::Yes(_))) {
                *slot = Some(verdict);
            }
            stop.store(true, std::sync::atomic::Ordering::Relaxed);
            return;
        }
    };

    if config.workers <= 1 {
        worker();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..config.workers {
                scope.spawn(worker);
            }
        });
    }

    let decision = found.into_inner().unwrap().unwrap_or(Decision::No);
    let shared = shared.into_inner().unwrap();
    let mut stats = totals.into_inner().unwrap();
    stats.assignments_generated = shared.generated;
    stats.assignments_accepted = shared.accepted;
    stats.result = decision.label().to_string();
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((decision, stats))
}

/// Decides `b`-orderability for any graph by deciding each connected
/// component. Per-component statistics are returned for components that
/// needed a search.
pub fn decide_any(
    g: &Graph,
    b: usize,
    config: &SolverConfig,
) -> Result<(Decision, Vec<DecideStats>), SolveError> {
    let deadline = config.budget.time_limit.map(|t| Instant::now() + t);
    let comps = ordered_components(g);
    let mut parts = Vec::with_capacity(comps.len());
    let mut stats = Vec::new();
    for c in &comps {
        let k = c.graph.n();
        if k == 1 {
            parts.push(Ordering::identity(1));
            continue;
        }
        if b == 0 {
            return Ok((Decision::No, stats));
        }
        if b >= k - 1 {
            parts.push(Ordering::identity(k));
            continue;
        }
        let root = local_root(&c.labels, config.root);
        let (d, s) = decide_until(&c.graph, b, root, config, deadline)?;
        stats.push(s);
        match d {
            Decision::Yes(pi) => parts.push(pi),
            other => return Ok((other, stats)),
        }
    }
    Ok((Decision::Yes(compose(g.n(), &comps, &parts)), stats))
}

/// `max(⌈Δ/2⌉, ⌈(n-1)/diam⌉)` for a connected graph.
///
/// A vertex of degree `Δ` has its neighbors on both sides within distance
/// `bw`, so `Δ ≤ 2·bw`. The first and last vertices of an optimal ordering
/// are joined by a path of at most `diam` edges, each spanning at most
/// `bw` positions, so `n - 1 ≤ diam·bw`.
pub fn lower_bound(g: &Graph) -> Result<usize, SolveError> {
    if g.n() < 2 {
        return Err(SolveError::Precondition("lower bound needs n >= 2".into()));
    }
    let diam = g.diameter().ok_or(GraphError::Disconnected)?;
    Ok(g.max_degree().div_ceil(2).max((g.n() - 1).div_ceil(diam)))
}

/// Exact bandwidth of any graph, within the configured budget.
///
/// Components are solved independently by binary search over `b` between
/// [`lower_bound`] and `n - 1`, then laid out as contiguous blocks, larger
/// components first.
pub fn minimize_bandwidth(g: &Graph, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let deadline = config.budget.time_limit.map(|t| start + t);
    let comps = ordered_components(g);
    let mut stats = SolveStats::default();
    let mut parts = Vec::with_capacity(comps.len());
    let (mut lower, mut upper) = (0, 0);
    for c in &comps {
        let k = c.graph.n();
        if k == 1 {
            parts.push(Ordering::identity(1));
            continue;
        }
        let root = local_root(&c.labels, config.root);
        let mut lo = lower_bound(&c.graph)?;
        let mut hi = k - 1;
        let mut witness = Ordering::identity(k);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let (d, s) = decide_until(&c.graph, mid, root, config, deadline)?;
            stats.decide_calls.push(s);
            match d {
                Decision::Yes(pi) => {
                    hi = mid;
                    witness = pi;
                }
                Decision::No => lo = mid + 1,
                Decision::Unknown(_) => break,
            }
        }
        debug_assert!(witness.bandwidth(&c.graph) <= hi);
        lower = lower.max(lo);
        upper = upper.max(witness.bandwidth(&c.graph));
        parts.push(witness);
    }
    for s in &stats.decide_calls {
        stats.assignments_generated += s.assignments_generated;
        stats.assignments_accepted += s.assignments_accepted;
        stats.states_total += s.states_total;
        stats.states_max_run = stats.states_max_run.max(s.states_max_run);
    }
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let ordering = compose(g.n(), &comps, &parts);
    debug_assert_eq!(ordering.bandwidth(g), upper);
    Ok(SolveResult {
        bandwidth: upper,
        lower_bound: lower,
        ordering,
        status: if lower == upper { Status::Optimal } else { Status::Unknown },
        stats,
    })
}

fn ordered_components(g: &Graph) -> Vec<crate::graph::Component> {
    let mut comps = g.connected_components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.graph.n()));
    comps
}

fn local_root(labels: &[usize], root: usize) -> usize {
    labels.iter().position(|&v| v == root).unwrap_or(0)
}

fn compose(n: usize, comps: &[crate::graph::Component], parts: &[Ordering]) -> Ordering {
    let mut position = vec![0; n];
    let mut offset = 0;
    for (c, pi) in comps.iter().zip(parts) {
        for (local, &orig) in c.labels.iter().enumerate() {
            position[orig] = offset + pi.position(local);
        }
        offset += c.labels.len();
    }
    Ordering::from_positions(position).expect("component blocks tile 1..=n")
}
