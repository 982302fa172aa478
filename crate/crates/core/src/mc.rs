//! Measure & Conquer bound on the number of search states.
//!
//! A hypothetical generator walks the spanning tree top-down, fixing the
//! segment and the state value of one vertex at a time. Unanalyzed vertices
//! weigh 1, except that a vertex whose parent was placed in the left half
//! of its segment weighs `alpha` and one whose parent was placed in the
//! right half weighs `beta`. Substituting `T(w) = κ^w` into the four
//! branching recurrences (leaf; inner vertex under an unplaced, left-placed
//! or right-placed parent) turns each into a constraint `f(κ) ≤ 1` with `f`
//! strictly decreasing in `κ`. The smallest `κ` meeting all four bounds the
//! total state count by `3(n+1)·κ^n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("weights must lie in (0, 1], got alpha = {alpha}, beta = {beta}")]
    WeightOutOfRange { alpha: f64, beta: f64 },
    #[error("invalid search parameter: {0}")]
    InvalidSearch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McWeights {
    pub alpha: f64,
    pub beta: f64,
}

impl McWeights {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, McError> {
        let ok = |x: f64| x > 0.0 && x <= 1.0;
        if ok(alpha) && ok(beta) {
            Ok(McWeights { alpha, beta })
        } else {
            Err(McError::WeightOutOfRange { alpha, beta })
        }
    }

    /// Unit weights, giving back the plain five-way bound.
    pub fn unweighted() -> Self {
        McWeights {
            alpha: 1.0,
            beta: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// A leaf: four choices whatever its weight.
    Leaf,
    /// Inner vertex whose parent is not placed yet.
    ParentUnplaced,
    /// Inner vertex whose parent sits in the left half of its segment.
    ParentLeft,
    /// Inner vertex whose parent sits in the right half of its segment.
    ParentRight,
}

impl Constraint {
    pub const ALL: [Constraint; 4] = [
        Constraint::Leaf,
        Constraint::ParentUnplaced,
        Constraint::ParentLeft,
        Constraint::ParentRight,
    ];

    /// Branching terms `(multiplicity, weight drop)`; the constraint reads
    /// `Σ c·κ^(-drop) ≤ 1`.
    fn terms(self, w: McWeights) -> Vec<(f64, f64)> {
        let (a, b) = (w.alpha, w.beta);
        match self {
            Constraint::Leaf => vec![(4.0, 1f64.min(a).min(b))],
            Constraint::ParentUnplaced => vec![(2.0, 1.0), (2.0, 2.0 - b), (1.0, 2.0 - a)],
            Constraint::ParentLeft => vec![(1.0, a), (1.0, 1.0 + a - b), (2.0, 1.0)],
            Constraint::ParentRight => vec![(2.0, b), (2.0, 1.0), (1.0, 1.0 + b - a)],
        }
    }

    /// `Σ c·κ^(-drop) - 1`; the constraint holds when this is `≤ 0`.
    pub fn residual(self, kappa: f64, w: McWeights) -> f64 {
        self.terms(w)
            .into_iter()
            .map(|(c, drop)| c * kappa.powf(-drop))
            .sum::<f64>()
            - 1.0
    }

    /// Smallest `κ > 1` satisfying this constraint, to within relative
    /// error `tol`. The returned value always satisfies it.
    pub fn root(self, w: McWeights, tol: f64) -> f64 {
        let mut lo = 1.0;
        let mut hi = 2.0;
        while self.residual(hi, w) > 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        debug_assert!(self.residual(lo, w) > 0.0);
        while hi - lo > tol * hi {
            let mid = 0.5 * (lo + hi);
            if self.residual(mid, w) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Leaf => "leaf",
            Constraint::ParentUnplaced => "parent_unplaced",
            Constraint::ParentLeft => "parent_left",
            Constraint::ParentRight => "parent_right",
        })
    }
}

/// Residuals in the order leaf, parent unplaced, parent left, parent right.
pub fn constraint_residuals(kappa: f64, w: McWeights) -> [f64; 4] {
    Constraint::ALL.map(|c| c.residual(kappa, w))
}

/// Roots closer than this to the overall bound are reported as binding.
pub const BINDING_GAP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McBound {
    pub weights: McWeights,
    pub kappa: f64,
    /// Per-constraint roots, in [`Constraint::ALL`] order.
    pub roots: [f64; 4],
    pub residuals: [f64; 4],
    pub binding: Vec<Constraint>,
}

/// Smallest branching base satisfying all four constraints.
pub fn kappa_for(w: McWeights, tol: f64) -> McBound {
    let roots = Constraint::ALL.map(|c| c.root(w, tol));
    let kappa = roots.iter().copied().fold(f64::MIN, f64::max);
    let binding = Constraint::ALL
        .into_iter()
        .zip(roots)
        .filter(|&(_, r)| kappa - r <= BINDING_GAP)
        .map(|(c, _)| c)
        .collect();
    McBound {
        weights: w,
        kappa,
        roots,
        residuals: constraint_residuals(kappa, w),
        binding,
    }
}

/// Grid search over `(alpha, beta)` followed by a finer grid around the
/// best coarse point. Grid points are integer multiples of the steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSearch {
    pub alpha_range: (f64, f64),
    pub beta_range: (f64, f64),
    pub coarse_step: f64,
    pub fine_step: f64,
    pub tol: f64,
}

impl Default for WeightSearch {
    fn default() -> Self {
        WeightSearch {
            alpha_range: (0.0, 1.0),
            beta_range: (0.0, 1.0),
            coarse_step: 0.005,
            fine_step: 1e-4,
            tol: 1e-9,
        }
    }
}

fn grid(range: (f64, f64), step: f64) -> Vec<f64> {
    // lower end excluded when it is 0: weights must stay positive
    let first = (range.0 / step - 1e-9).ceil().max(1.0) as i64;
    let last = (range.1 / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

pub fn optimize_weights(search: &WeightSearch) -> Result<McBound, McError> {
    let WeightSearch {
        alpha_range,
        beta_range,
        coarse_step,
        fine_step,
        tol,
    } = *search;
    for (lo, hi) in [alpha_range, beta_range] {
        if !(lo >= 0.0 && lo <= hi && hi <= 1.0) {
            return Err(McError::InvalidSearch(format!("range ({lo}, {hi}) not within [0, 1]")));
        }
    }
    if !(coarse_step > 0.0 && fine_step > 0.0 && tol > 0.0) {
        return Err(McError::InvalidSearch("steps and tolerance must be positive".into()));
    }

    let best_on = |alphas: &[f64], betas: &[f64]| -> Option<McBound> {
        let mut best: Option<McBound> = None;
        for &alpha in alphas {
            for &beta in betas {
                let bound = kappa_for(McWeights { alpha, beta }, tol);
                if best.as_ref().is_none_or(|b| bound.kappa < b.kappa) {
                    best = Some(bound);
                }
            }
        }
        best
    };

    let coarse = best_on(&grid(alpha_range, coarse_step), &grid(beta_range, coarse_step))
        .ok_or_else(|| McError::InvalidSearch("empty search grid".into()))?;
    let around = |center: f64, range: (f64, f64)| {
        grid(
            (
                (center - coarse_step).max(range.0),
                (center + coarse_step).min(range.1),
            ),
            fine_step,
        )
    };
    let fine = best_on(
        &around(coarse.weights.alpha, alpha_range),
        &around(coarse.weights.beta, beta_range),
    );
    Ok(match fine {
        Some(f) if f.kappa < coarse.kappa => f,
        _ => coarse,
    })
}

/// Rounded-up optimum of the weight search, used as the published base of
/// the total state bound.
pub const STATE_BASE: f64 = 4.8285;

/// `ln(3(n+1)·κ^n)`.
pub fn ln_total_state_bound(n: usize, kappa: f64) -> f64 {
    (3.0 * (n as f64 + 1.0)).ln() + n as f64 * kappa.ln()
}

/// `3(n+1)·κ^n`; `inf` once it exceeds `f64` range.
pub fn total_state_bound(n: usize, kappa: f64) -> f64 {
    ln_total_state_bound(n, kappa).exp()
}
