//! Phase 1: segment assignments over a rooted spanning tree.
//!
//! The root gets a width-2 segment `(i, i+2)` for every `i` in
//! `-1..⌈n/(b+1)⌉`. Walking the tree top-down, an inner child of a vertex on
//! `(i, i+2)` gets `(i-1, i+1)` or `(i+1, i+3)`, and a leaf child gets the
//! width-4 segment `(i-1, i+3)`. Every b-ordering is consistent with at
//! least one assignment produced this way; [`edge_filter`] discards
//! assignments where some graph edge connects segments that are too far
//! apart to be bridged by an edge of length at most `b`.

use crate::geometry::Segment;
use crate::graph::{Graph, Ordering, RootedTree};

/// A segment for every vertex, for fixed `n` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentAssignment {
    segments: Vec<Segment>,
    n: usize,
    b: usize,
}

impl SegmentAssignment {
    pub fn new(segments: Vec<Segment>, b: usize) -> Self {
        let n = segments.len();
        SegmentAssignment { segments, n, b }
    }

    pub fn segment(&self, v: usize) -> Segment {
        self.segments[v]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Checks the structural rules against `tree`: leaves on width-4
    /// segments, inner vertices on width-2 segments, inner children shifted
    /// by exactly one from their parent, leaf children widened by one on
    /// each side, and no empty segment.
    pub fn is_well_formed(&self, tree: &RootedTree) -> bool {
        if tree.n() != self.n {
            return false;
        }
        (0..self.n).all(|v| {
            let s = self.segments[v];
            if s.is_empty(self.n, self.b) {
                return false;
            }
            let width_ok = if tree.is_leaf(v) && tree.parent(v).is_some() {
                s.width() == 4
            } else {
                s.width() == 2
            };
            let parent_ok = match tree.parent(v) {
                None => true,
                Some(u) => {
                    let p = self.segments[u];
                    if tree.is_leaf(v) {
                        s.lo == p.lo - 1 && s.hi == p.hi + 1
                    } else {
                        (s.lo - p.lo).abs() == 1
                    }
                }
            };
            width_ok && parent_ok
        })
    }
}

/// Root segments tried: `(i, i+2)` for `i = -1 ..= ⌈n/(b+1)⌉ - 1`.
pub fn root_segment_range(n: usize, b: usize) -> std::ops::RangeInclusive<i32> {
    -1..=crate::geometry::base_segment_count(n, b) as i32 - 1
}

/// Streams every segment assignment for `tree`, skipping those with an
/// empty segment. Vertices are fixed in tree preorder; at each inner vertex
/// the left option `(i-1, i+1)` is explored before `(i+1, i+3)`.
#[derive(Debug, Clone)]
pub struct AssignmentEnumerator<'t> {
    tree: &'t RootedTree,
    n: usize,
    b: usize,
    root_lo: i32,
    root_choices: usize,
    segments: Vec<Segment>,
    // next option index to try at each preorder depth
    next_choice: Vec<usize>,
    depth: usize,
    done: bool,
    yielded: u64,
}

impl<'t> AssignmentEnumerator<'t> {
    pub fn new(tree: &'t RootedTree, b: usize) -> Self {
        assert!(b >= 1, "segment assignments need b >= 1");
        let n = tree.n();
        let range = root_segment_range(n, b);
        AssignmentEnumerator {
            tree,
            n,
            b,
            root_lo: *range.start(),
            root_choices: range.count(),
            segments: vec![Segment::new(0, 1); n],
            next_choice: vec![0; n],
            depth: 0,
            done: n == 0,
            yielded: 0,
        }
    }

    /// Assignments yielded so far.
    pub fn yielded(&self) -> u64 {
        self.yielded
    }

    fn option_count(&self, v: usize) -> usize {
        match self.tree.parent(v) {
            None => self.root_choices,
            Some(_) if self.tree.is_leaf(v) => 1,
            Some(_) => 2,
        }
    }

    fn option(&self, v: usize, choice: usize) -> Segment {
        match self.tree.parent(v) {
            None => {
                let i = self.root_lo + choice as i32;
                Segment::new(i, i + 2)
            }
            Some(u) => {
                let i = self.segments[u].lo;
                if self.tree.is_leaf(v) {
                    Segment::new(i - 1, i + 3)
                } else if choice == 0 {
                    Segment::new(i - 1, i + 1)
                } else {
                    Segment::new(i + 1, i + 3)
                }
            }
        }
    }
}

impl Iterator for AssignmentEnumerator<'_> {
    type Item = SegmentAssignment;

    fn next(&mut self) -> Option<SegmentAssignment> {
        if self.done {
            return None;
        }
        let order = self.tree.preorder();
        loop {
            if self.depth == self.n {
                self.depth -= 1;
                self.yielded += 1;
                return Some(SegmentAssignment {
                    segments: self.segments.clone(),
                    n: self.n,
                    b: self.b,
                });
            }
            let v = order[self.depth];
            let choice = self.next_choice[self.depth];
            if choice >= self.option_count(v) {
                self.next_choice[self.depth] = 0;
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            self.next_choice[self.depth] += 1;
            let seg = self.option(v, choice);
            // every completion below would contain this empty segment
            if seg.is_empty(self.n, self.b) {
                continue;
            }
            self.segments[v] = seg;
            self.depth += 1;
        }
    }
}

/// Streams the assignments for `tree` and bandwidth `b`.
pub fn enumerate_assignments(tree: &RootedTree, b: usize) -> AssignmentEnumerator<'_> {
    AssignmentEnumerator::new(tree, b)
}

/// Upper bound `(n+1)·2^(n-1)` on the number of enumerated assignments.
pub fn assignment_count_bound(n: usize) -> f64 {
    (n as f64 + 1.0) * 2f64.powi(n as i32 - 1)
}

/// True iff every edge `uv` of `g` has `φ(u) = (i, j)`, `φ(v) = (k, l)` with
/// `j ≥ k` and `l ≥ i`, i.e. no full base segment separates the two.
pub fn edge_filter(phi: &SegmentAssignment, g: &Graph) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let a = phi.segment(u);
        let c = phi.segment(v);
        a.hi >= c.lo && c.hi >= a.lo
    })
}

/// True iff every vertex's position under `pi` lies in its segment.
pub fn consistency_witness(phi: &SegmentAssignment, pi: &Ordering) -> bool {
    pi.len() == phi.n()
        && (0..phi.n()).all(|v| {
            phi.segment(v)
                .contains_position(pi.position(v), phi.n(), phi.b())
        })
}
