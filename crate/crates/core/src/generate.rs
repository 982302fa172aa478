//! Deterministic graph families used as test and benchmark corpora.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("no connected sample after {0} attempts")]
    RetriesExhausted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    Star,
    RandomGnp,
    RandomTree,
    Caterpillar,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Complete,
        FamilyKind::Star,
        FamilyKind::RandomGnp,
        FamilyKind::RandomTree,
        FamilyKind::Caterpillar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::Star => "star",
            FamilyKind::RandomGnp => "gnp",
            FamilyKind::RandomTree => "tree",
            FamilyKind::Caterpillar => "caterpillar",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .or(match s {
                "random_gnp" => Some(FamilyKind::RandomGnp),
                "random_tree" => Some(FamilyKind::RandomTree),
                _ => None,
            })
            .ok_or_else(|| GenerateError::UnknownFamily(s.to_string()))
    }
}

/// A fully parameterized graph family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Path { n: usize },
    /// Cycle on `n ≥ 3` vertices.
    Cycle { n: usize },
    Complete { n: usize },
    /// Star with center 0 and `leaves` leaves (`leaves + 1` vertices).
    Star { leaves: usize },
    /// Erdős–Rényi G(n, p). With `connected` set, samples are redrawn until
    /// connected.
    RandomGnp { n: usize, p: f64, connected: bool },
    /// Uniform random labeled tree (random Prüfer sequence).
    RandomTree { n: usize },
    /// A path of `spine` vertices, each with `legs` pendant vertices.
    Caterpillar { spine: usize, legs: usize },
}

const MAX_GNP_ATTEMPTS: usize = 10_000;

/// Generates a member of `family`; random families are a pure function of
/// `seed`.
pub fn generate(family: Family, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Path { n } => {
            positive(n, "n")?;
            Ok(edges(n, (1..n).map(|v| (v - 1, v))))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(GenerateError::InvalidParameter(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Ok(edges(n, (0..n).map(|v| (v, (v + 1) % n))))
        }
        Family::Complete { n } => {
            positive(n, "n")?;
            Ok(edges(
                n,
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
            ))
        }
        Family::Star { leaves } => Ok(edges(leaves + 1, (1..=leaves).map(|v| (0, v)))),
        Family::RandomGnp { n, p, connected } => {
            positive(n, "n")?;
            if !(0.0..=1.0).contains(&p) {
                return Err(GenerateError::InvalidParameter(format!(
                    "p must lie in [0, 1], got {p}"
                )));
            }
            if connected && n > 1 && p == 0.0 {
                return Err(GenerateError::InvalidParameter(
                    "p = 0 never yields a connected graph".into(),
                ));
            }
            for _ in 0..MAX_GNP_ATTEMPTS {
                let mut list = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            list.push((u, v));
                        }
                    }
                }
                let g = edges(n, list);
                if !connected || g.is_connected() {
                    return Ok(g);
                }
            }
            Err(GenerateError::RetriesExhausted(MAX_GNP_ATTEMPTS))
        }
        Family::RandomTree { n } => {
            positive(n, "n")?;
            if n <= 2 {
                return Ok(edges(n, (1..n).map(|v| (0, v))));
            }
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Ok(edges(n, prufer_edges(n, &code)))
        }
        Family::Caterpillar { spine, legs } => {
            positive(spine, "spine")?;
            let n = spine * (legs + 1);
            let mut list: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
            let mut next = spine;
            for s in 0..spine {
                for _ in 0..legs {
                    list.push((s, next));
                    next += 1;
                }
            }
            Ok(edges(n, list))
        }
    }
}

/// Random connected G(n, p) graph with its vertices shuffled.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    let g = generate(
        Family::RandomGnp {
            n,
            p,
            connected: true,
        },
        seed,
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    Ok(edges(n, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))))
}

/// Decodes a Prüfer sequence of length `n - 2` into the edges of a labeled
/// tree on `n` vertices.
pub fn prufer_edges(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut out = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        out.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    out.push((rest[0], rest[1]));
    out
}

fn positive(x: usize, what: &str) -> Result<(), GenerateError> {
    if x == 0 {
        Err(GenerateError::InvalidParameter(format!("{what} must be >= 1")))
    } else {
        Ok(())
    }
}

fn edges(n: usize, list: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, list).expect("generator produced an invalid edge")
}
