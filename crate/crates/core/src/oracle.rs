//! Brute-force reference solver. Shares nothing with the two-phase search
//! beyond [`Graph`] and [`Ordering`].

use std::time::Instant;

use crate::graph::{Graph, Ordering};
use crate::solver::{SolveError, SolveResult, SolveStats, Status};

pub const DEFAULT_ORACLE_LIMIT: usize = 10;

/// Exact bandwidth by branch and bound over permutations. Vertices are
/// placed left to right; a branch dies as soon as a placed edge, or an
/// edge still waiting for its second endpoint, cannot beat the best
/// ordering found so far.
pub fn oracle_bandwidth(g: &Graph, limit: usize) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n > limit {
        return Err(SolveError::TooLarge { n, limit });
    }
    let start = Instant::now();
    let identity = Ordering::identity(n);
    let mut best = Best {
        width: identity.bandwidth(g),
        sequence: (0..n).collect(),
    };
    if best.width > 0 {
        let mut pos = vec![0usize; n];
        let mut seq = Vec::with_capacity(n);
        place(g, &mut pos, &mut seq, &mut best);
    }
    let ordering = Ordering::from_sequence(&best.sequence).expect("oracle sequence");
    Ok(SolveResult {
        bandwidth: best.width,
        lower_bound: best.width,
        ordering,
        status: Status::Optimal,
        stats: SolveStats {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            ..SolveStats::default()
        },
    })
}

struct Best {
    width: usize,
    sequence: Vec<usize>,
}

fn place(g: &Graph, pos: &mut [usize], seq: &mut Vec<usize>, best: &mut Best) {
    let n = g.n();
    let p = seq.len() + 1;
    if p > n {
        // edges were checked against the target current at placement time,
        // which may since have tightened
        let width = g
            .edges()
            .iter()
            .map(|&(u, v)| pos[u].abs_diff(pos[v]))
            .max()
            .unwrap_or(0);
        if width < best.width {
            best.width = width;
            best.sequence = seq.clone();
        }
        return;
    }
    for v in 0..n {
        // a graph with edges cannot do better than 1
        if best.width <= 1 {
            return;
        }
        let target = best.width - 1;
        // a placed vertex must see its unplaced neighbors by position pos + target
        if seq
            .iter()
            .any(|&u| pos[u] + target < p && g.neighbors(u).iter().any(|&w| pos[w] == 0))
        {
            return;
        }
        if pos[v] != 0
            || g
                .neighbors(v)
                .iter()
                .any(|&u| pos[u] != 0 && p - pos[u] > target)
        {
            continue;
        }
        pos[v] = p;
        seq.push(v);
        place(g, pos, seq, best);
        seq.pop();
        pos[v] = 0;
    }
}

/// Every ordering of `g` with bandwidth at most `b`, by exhaustive
/// enumeration of all `n!` permutations.
pub fn b_orderings(g: &Graph, b: usize, limit: usize) -> Result<Vec<Ordering>, SolveError> {
    let n = g.n();
    if n > limit {
        return Err(SolveError::TooLarge { n, limit });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    // Heap's algorithm over position vectors
    let mut c = vec![0usize; n];
    let mut visit = |perm: &[usize]| {
        let o = Ordering::from_positions(perm.to_vec()).unwrap();
        if o.bandwidth(g) <= b {
            out.push(o);
        }
    };
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn bw(f: Family) -> usize {
        oracle_bandwidth(&generate(f, 0).unwrap(), 10).unwrap().bandwidth
    }

    #[test]
    fn small_families() {
        assert_eq!(bw(Family::Path { n: 4 }), 1);
        assert_eq!(bw(Family::Complete { n: 3 }), 2);
        assert_eq!(bw(Family::Cycle { n: 5 }), 2);
        assert_eq!(bw(Family::Star { leaves: 4 }), 2);
        assert_eq!(bw(Family::Complete { n: 6 }), 5);
        assert_eq!(oracle_bandwidth(&Graph::new(3), 10).unwrap().bandwidth, 0);
    }

    #[test]
    fn witness_matches_value_and_limit_is_enforced() {
        let g = generate(Family::Cycle { n: 7 }, 0).unwrap();
        let r = oracle_bandwidth(&g, 10).unwrap();
        assert_eq!(r.ordering.bandwidth(&g), r.bandwidth);
        assert!(matches!(
            oracle_bandwidth(&Graph::new(11), 10),
            Err(SolveError::TooLarge { n: 11, limit: 10 })
        ));
    }

    #[test]
    fn counts_all_orderings() {
        // every ordering of K3 has bandwidth 2; P3 has 2 orderings of width 1
        let k3 = generate(Family::Complete { n: 3 }, 0).unwrap();
        assert_eq!(b_orderings(&k3, 2, 10).unwrap().len(), 6);
        assert!(b_orderings(&k3, 1, 10).unwrap().is_empty());
        let p3 = generate(Family::Path { n: 3 }, 0).unwrap();
        assert_eq!(b_orderings(&p3, 1, 10).unwrap().len(), 2);
    }
}
