//! Phase 2: depth-first search over partial base-segment maps for one fixed
//! segment assignment.
//!
//! Positions are filled in color order. At step `k` the position being
//! filled lies in base segment `t = step_base_segment[k]`, and a vertex `v`
//! may take it when
//!
//! * `Θ_t ⊆ φ(v)`,
//! * every already placed neighbor sits in base segment `t` or `t + 1`, and
//! * every unplaced neighbor `u` has `φ(u)` starting at or before `t`.
//!
//! A search state only records base segments, not exact positions, so many
//! partial orderings collapse into one state; the visited set makes sure
//! each is expanded once. A state reaching depth `n` spells out a b-ordering
//! through the DFS stack.

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::Instant;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::assignment::SegmentAssignment;
use crate::geometry::{base_segment_count, ColorOrder};
use crate::graph::{Graph, Ordering};

/// Partial map from vertices to 0-based base-segment indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SearchState {
    assigned: Vec<Option<usize>>,
    count: usize,
}

impl SearchState {
    pub fn empty(n: usize) -> Self {
        SearchState {
            assigned: vec![None; n],
            count: 0,
        }
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.assigned[v]
    }

    /// Number of defined vertices, which is also the DFS depth.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn n(&self) -> usize {
        self.assigned.len()
    }
}

fn signed(s: &SearchState) -> Vec<i32> {
    s.assigned
        .iter()
        .map(|a| a.map_or(-1, |t| t as i32))
        .collect()
}

#[inline]
fn can_place(g: &Graph, lo: &[i32], hi: &[i32], assigned: &[i32], v: usize, t: i32) -> bool {
    if assigned[v] >= 0 || t < lo[v] || t >= hi[v] {
        return false;
    }
    g.neighbors(v).iter().all(|&u| {
        let k = assigned[u];
        if k >= 0 {
            t == k || t + 1 == k
        } else {
            lo[u] <= t
        }
    })
}

fn bounds(phi: &SegmentAssignment) -> (Vec<i32>, Vec<i32>) {
    phi.segments().iter().map(|s| (s.lo, s.hi)).unzip()
}

/// Undefined vertices that may be placed in base segment `t`, ascending.
pub fn extend_candidates(
    s: &SearchState,
    phi: &SegmentAssignment,
    g: &Graph,
    t: usize,
) -> Vec<usize> {
    let (lo, hi) = bounds(phi);
    let assigned = signed(s);
    (0..g.n())
        .filter(|&v| can_place(g, &lo, &hi, &assigned, v, t as i32))
        .collect()
}

/// `s` with `v` defined as base segment `t`.
///
/// Panics if `v` is already defined.
pub fn extend(s: &SearchState, v: usize, t: usize) -> SearchState {
    assert!(
        s.assigned[v].is_none(),
        "vertex {v} is already defined in this state"
    );
    let mut next = s.clone();
    next.assigned[v] = Some(t);
    next.count += 1;
    next
}

/// Checks that `s` is a state for `phi`: every defined vertex lies in a
/// base segment of its assigned segment, the defined vertices fill exactly
/// the base segments of the first `count` color-order positions, defined
/// neighbors are at most one base segment apart, and a defined vertex's
/// undefined neighbors have segments starting no later than it.
pub fn is_state(s: &SearchState, phi: &SegmentAssignment, g: &Graph) -> bool {
    let n = g.n();
    let b = phi.b();
    let segs = base_segment_count(n, b);
    let order = ColorOrder::new(n, b);
    let mut demand = vec![0i64; segs];
    for &t in &order.step_base_segment()[..s.count] {
        demand[t] += 1;
    }
    for v in 0..n {
        if let Some(t) = s.assigned[v] {
            if t >= segs || !phi.segment(v).contains_base(t as i32) {
                return false;
            }
            demand[t] -= 1;
        }
    }
    if demand.iter().any(|&d| d != 0) {
        return false;
    }
    g.edges().iter().all(|&(u, v)| match (s.assigned[u], s.assigned[v]) {
        (None, None) => true,
        (Some(i), None) => phi.segment(v).lo <= i as i32,
        (None, Some(i)) => phi.segment(u).lo <= i as i32,
        (Some(i), Some(k)) => i.abs_diff(k) <= 1,
    })
}

const CODE_BITS: usize = 3;
const CODES_PER_WORD: usize = 64 / CODE_BITS;

/// Packed state identity: 3 bits per vertex, `0` for undefined and
/// `1 + (t - lo(φ(v)))` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(SmallVec<[u64; 2]>);

impl StateKey {
    fn zero(n: usize) -> Self {
        StateKey(SmallVec::from_elem(0, n.div_ceil(CODES_PER_WORD).max(1)))
    }

    #[inline]
    fn set(&mut self, v: usize, code: u64) {
        let (w, off) = (v / CODES_PER_WORD, (v % CODES_PER_WORD) * CODE_BITS);
        self.0[w] = (self.0[w] & !(0b111 << off)) | (code << off);
    }

    pub fn code(&self, v: usize) -> u8 {
        let (w, off) = (v / CODES_PER_WORD, (v % CODES_PER_WORD) * CODE_BITS);
        ((self.0[w] >> off) & 0b111) as u8
    }

    pub fn words(&self) -> &[u64] {
        &self.0
    }
}

pub fn encode_state(s: &SearchState, phi: &SegmentAssignment) -> StateKey {
    let mut key = StateKey::zero(s.n());
    for v in 0..s.n() {
        if let Some(t) = s.assigned[v] {
            let code = 1 + (t as i64 - phi.segment(v).lo as i64);
            debug_assert!((1..=4).contains(&code));
            key.set(v, code as u64);
        }
    }
    key
}

pub fn decode_state(key: &StateKey, phi: &SegmentAssignment) -> SearchState {
    let mut s = SearchState::empty(phi.n());
    for v in 0..phi.n() {
        let code = key.code(v);
        if code != 0 {
            s.assigned[v] = Some((phi.segment(v).lo + code as i32 - 1) as usize);
            s.count += 1;
        }
    }
    s
}

/// `3^(n-L) · 4^L`, the most distinct states a single run can visit.
pub fn per_run_state_bound(n: usize, leaves: usize) -> f64 {
    3f64.powi((n - leaves) as i32) * 4f64.powi(leaves as i32)
}

/// Resource caps for one run.
#[derive(Debug, Clone, Copy)]
pub struct Limits<'a> {
    pub max_states: u64,
    pub max_visited: usize,
    pub deadline: Option<Instant>,
    /// Set by another worker to stop this run early.
    pub cancel: Option<&'a AtomicBool>,
}

impl Default for Limits<'_> {
    fn default() -> Self {
        Limits {
            max_states: 1 << 26,
            max_visited: 1 << 26,
            deadline: None,
            cancel: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Halt {
    MaxStates,
    MaxVisited,
    Deadline,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// A b-ordering consistent with the assignment.
    Found(Ordering),
    /// No consistent b-ordering exists.
    Exhausted,
    /// The run stopped before it could decide.
    Halted(Halt),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub states_visited: u64,
    pub visited_peak: usize,
    pub depth_max: usize,
}

enum Flow {
    Found,
    Dead,
    Halt(Halt),
}

/// Reusable Phase 2 engine for one graph and bandwidth. The visited set is
/// cleared at the start of every run.
pub struct Searcher<'g> {
    g: &'g Graph,
    b: usize,
    order: ColorOrder,
    step: Vec<i32>,
    lo: Vec<i32>,
    hi: Vec<i32>,
    assigned: Vec<i32>,
    key: StateKey,
    stack: Vec<usize>,
    visited: FxHashSet<StateKey>,
    stats: SearchStats,
}

impl<'g> Searcher<'g> {
    pub fn new(g: &'g Graph, b: usize) -> Self {
        let n = g.n();
        let order = ColorOrder::new(n, b);
        let step = order.step_base_segment().iter().map(|&t| t as i32).collect();
        Searcher {
            g,
            b,
            order,
            step,
            lo: vec![0; n],
            hi: vec![0; n],
            assigned: vec![-1; n],
            key: StateKey::zero(n),
            stack: Vec::with_capacity(n),
            visited: FxHashSet::default(),
            stats: SearchStats::default(),
        }
    }

    pub fn color_order(&self) -> &ColorOrder {
        &self.order
    }

    /// Keys of the states visited by the last run.
    pub fn visited(&self) -> impl Iterator<Item = &StateKey> {
        self.visited.iter()
    }

    pub fn run(&mut self, phi: &SegmentAssignment, limits: &Limits<'_>) -> (RunOutcome, SearchStats) {
        let n = self.g.n();
        assert_eq!(phi.n(), n, "assignment/graph size mismatch");
        assert_eq!(phi.b(), self.b, "assignment built for a different b");
        (self.lo, self.hi) = bounds(phi);
        self.assigned.fill(-1);
        self.key = StateKey::zero(n);
        self.stack.clear();
        self.visited.clear();
        self.stats = SearchStats::default();

        let flow = self.explore(0, limits);
        let outcome = match flow {
            Flow::Found => {
                let mut position = vec![0; n];
                for (k, &v) in self.stack.iter().enumerate() {
                    position[v] = self.order.sequence()[k];
                }
                let pi = Ordering::from_positions(position).expect("DFS stack is a bijection");
                assert!(
                    pi.bandwidth(self.g) <= self.b,
                    "search returned an ordering wider than b"
                );
                RunOutcome::Found(pi)
            }
            Flow::Dead => RunOutcome::Exhausted,
            Flow::Halt(h) => RunOutcome::Halted(h),
        };
        self.stats.visited_peak = self.visited.len();
        (outcome, self.stats)
    }

    fn explore(&mut self, depth: usize, limits: &Limits<'_>) -> Flow {
        if !self.visited.contains(&self.key) {
            if self.stats.states_visited >= limits.max_states {
                return Flow::Halt(Halt::MaxStates);
            }
            if self.visited.len() >= limits.max_visited {
                return Flow::Halt(Halt::MaxVisited);
            }
            self.visited.insert(self.key.clone());
        } else {
            return Flow::Dead;
        }
        self.stats.states_visited += 1;
        self.stats.depth_max = self.stats.depth_max.max(depth);
        if self.stats.states_visited.is_multiple_of(1024) {
            if limits.cancel.is_some_and(|c| c.load(AtomicOrdering::Relaxed)) {
                return Flow::Halt(Halt::Cancelled);
            }
            if limits.deadline.is_some_and(|d| Instant::now() >= d) {
                return Flow::Halt(Halt::Deadline);
            }
        }

        let n = self.g.n();
        if depth == n {
            return Flow::Found;
        }
        let t = self.step[depth];
        for v in 0..n {
            if !can_place(self.g, &self.lo, &self.hi, &self.assigned, v, t) {
                continue;
            }
            self.assigned[v] = t;
            self.key.set(v, (1 + t - self.lo[v]) as u64);
            self.stack.push(v);
            match self.explore(depth + 1, limits) {
                Flow::Dead => {}
                other => return other,
            }
            self.stack.pop();
            self.key.set(v, 0);
            self.assigned[v] = -1;
        }
        Flow::Dead
    }
}

/// Runs Phase 2 for a single assignment.
pub fn dfs_decide(
    phi: &SegmentAssignment,
    g: &Graph,
    limits: &Limits<'_>,
) -> (RunOutcome, SearchStats) {
    Searcher::new(g, phi.b()).run(phi, limits)
}
