//! Position geometry for a fixed bandwidth `b`.
//!
//! Positions `1..=n` are cut into base segments of `b + 1` consecutive
//! positions. Base segment `t` (0-based) covers `t(b+1)+1 ..= (t+1)(b+1)`,
//! clipped to `1..=n`. A position's color is its 1-based offset inside its
//! base segment. Two positions with the same color in neighboring base
//! segments are exactly `b + 1` apart, which is what makes the color order
//! useful: filling positions by (color, segment) lets an edge constraint be
//! checked against base-segment indices alone.

use std::ops::RangeInclusive;

/// 0-based base-segment index of position `p`.
pub fn segment_of(p: usize, b: usize) -> usize {
    debug_assert!(p >= 1);
    (p - 1) / (b + 1)
}

/// Color of position `p`, in `1..=b+1`.
pub fn color_of(p: usize, b: usize) -> usize {
    debug_assert!(p >= 1);
    (p - 1) % (b + 1) + 1
}

/// Number of base segments needed to cover `1..=n`, i.e. `⌈n/(b+1)⌉`.
pub fn base_segment_count(n: usize, b: usize) -> usize {
    n.div_ceil(b + 1)
}

/// The union of base segments `lo..hi`. Indices may be negative or run past
/// the last base segment; the covered positions are clipped to `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub lo: i32,
    pub hi: i32,
}

impl Segment {
    pub fn new(lo: i32, hi: i32) -> Self {
        debug_assert!(lo < hi);
        Segment { lo, hi }
    }

    /// The base segment `Θ_t`.
    pub fn base(t: i32) -> Self {
        Segment::new(t, t + 1)
    }

    /// Number of base segments spanned.
    pub fn width(&self) -> i32 {
        self.hi - self.lo
    }

    /// Whether base segment `t` is one of the spanned base segments.
    pub fn contains_base(&self, t: i32) -> bool {
        self.lo <= t && t < self.hi
    }

    /// Positions covered by the segment (possibly empty).
    pub fn positions(&self, n: usize, b: usize) -> RangeInclusive<usize> {
        let step = b as i64 + 1;
        let first = (self.lo as i64 * step + 1).max(1);
        let last = (self.hi as i64 * step).min(n as i64);
        if first > last {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        first as usize..=last as usize
    }

    pub fn is_empty(&self, n: usize, b: usize) -> bool {
        self.positions(n, b).is_empty()
    }

    pub fn contains_position(&self, p: usize, n: usize, b: usize) -> bool {
        self.positions(n, b).contains(&p)
    }
}

/// Positions `1..=n` sorted by `(color, segment)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorOrder {
    sequence: Vec<usize>,
    step_base_segment: Vec<usize>,
    rank: Vec<usize>,
}

impl ColorOrder {
    pub fn new(n: usize, b: usize) -> Self {
        assert!(b >= 1, "color order needs b >= 1");
        // color-major sweep: for each color, every base segment left to right
        let mut sequence = Vec::with_capacity(n);
        for color in 1..=b + 1 {
            let mut p = color;
            while p <= n {
                sequence.push(p);
                p += b + 1;
            }
        }
        let step_base_segment = sequence.iter().map(|&p| segment_of(p, b)).collect();
        let mut rank = vec![0; n + 1];
        for (k, &p) in sequence.iter().enumerate() {
            rank[p] = k;
        }
        ColorOrder {
            sequence,
            step_base_segment,
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// `sequence()[k]` is the position filled at step `k` (0-based).
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Base segment of the position filled at step `k`.
    pub fn step_base_segment(&self) -> &[usize] {
        &self.step_base_segment
    }

    /// 0-based step at which position `p` is filled.
    pub fn rank(&self, p: usize) -> usize {
        self.rank[p]
    }
}
