//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fail.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bandwidth::assignment::{assignment_count_bound, consistency_witness, edge_filter, enumerate_assignments};
use bandwidth::generate::{generate, prufer_edges, random_connected, Family};
use bandwidth::mc::{kappa_for, optimize_weights, total_state_bound, McWeights, WeightSearch, STATE_BASE};
use bandwidth::oracle::{b_orderings, oracle_bandwidth};
use bandwidth::search::per_run_state_bound;
use bandwidth::solver::DecideStats;
use bandwidth::{minimize_bandwidth, Graph, SolveResult, SolverConfig, Status};

type Outcome = Result<String, String>;

/// Decision-call counters gathered by the solving criteria, for the
/// counting criteria to check.
#[derive(Default)]
struct Ledger {
    calls: Vec<DecideStats>,
    graphs: Vec<Graph>,
}

fn solve(g: &Graph, ledger: &mut Ledger) -> Result<SolveResult, String> {
    let r = minimize_bandwidth(g, &SolverConfig::default()).map_err(|e| e.to_string())?;
    ledger.calls.extend(r.stats.decide_calls.iter().cloned());
    ledger.graphs.push(g.clone());
    Ok(r)
}

fn verify_witness(g: &Graph, r: &SolveResult) -> Result<(), String> {
    if r.status != Status::Optimal {
        return Err(format!("status {:?} on {}", r.status, g.to_edge_list()));
    }
    let w = r.ordering.bandwidth(g);
    if w != r.bandwidth || r.ordering.len() != g.n() {
        return Err(format!("witness width {w} != reported {}", r.bandwidth));
    }
    Ok(())
}

fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .filter(Graph::is_connected)
        .collect()
}

fn oracle_equivalence(ledger: &mut Ledger) -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        for g in all_connected_graphs(n) {
            let r = solve(&g, ledger)?;
            verify_witness(&g, &r)?;
            let o = oracle_bandwidth(&g, 10).map_err(|e| e.to_string())?;
            if o.ordering.bandwidth(&g) != o.bandwidth {
                return Err("oracle witness does not re-verify".into());
            }
            if r.bandwidth != o.bandwidth {
                return Err(format!("solver {} vs oracle {} on\n{}", r.bandwidth, o.bandwidth, g.to_edge_list()));
            }
            exhaustive += 1;
        }
    }
    let mut random = 0;
    for n in [6, 7, 8] {
        for seed in 0..70u64 {
            let p = [0.2, 0.35, 0.5, 0.7][seed as usize % 4];
            let g = random_connected(n, p, 1000 * n as u64 + seed).map_err(|e| e.to_string())?;
            let r = solve(&g, ledger)?;
            verify_witness(&g, &r)?;
            let o = oracle_bandwidth(&g, 10).map_err(|e| e.to_string())?;
            if r.bandwidth != o.bandwidth {
                return Err(format!("solver {} vs oracle {} on\n{}", r.bandwidth, o.bandwidth, g.to_edge_list()));
            }
            random += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive graphs (n <= 5) and {random} random graphs (n = 6..8) agree"))
}

fn known_families(ledger: &mut Ledger) -> Outcome {
    let mut checked = 0;
    let mut check = |family: Family, expected: usize, with_oracle: bool, ledger: &mut Ledger| -> Result<(), String> {
        let g = generate(family, 0).map_err(|e| e.to_string())?;
        if with_oracle {
            let o = oracle_bandwidth(&g, 10).map_err(|e| e.to_string())?.bandwidth;
            if o != expected {
                return Err(format!("oracle gives {o} for {family:?}, expected {expected}"));
            }
        }
        let r = solve(&g, ledger)?;
        verify_witness(&g, &r)?;
        if r.bandwidth != expected {
            return Err(format!("solver gives {} for {family:?}, expected {expected}", r.bandwidth));
        }
        checked += 1;
        Ok(())
    };
    for n in 2..=12 {
        check(Family::Path { n }, 1, false, ledger)?;
        check(Family::Complete { n }, n - 1, false, ledger)?;
    }
    for n in 3..=10 {
        check(Family::Cycle { n }, 2, true, ledger)?;
    }
    for m in 1..=9 {
        check(Family::Star { leaves: m }, m.div_ceil(2), true, ledger)?;
    }
    Ok(format!("{checked} family members match"))
}

fn assignment_counts(ledger: &Ledger) -> Outcome {
    let mut worst: f64 = 0.0;
    for c in &ledger.calls {
        let bound = assignment_count_bound(c.n);
        if c.assignments_generated as f64 > bound {
            return Err(format!("{} assignments for n = {}, bound {bound}", c.assignments_generated, c.n));
        }
        worst = worst.max(c.assignments_generated as f64 / bound);
    }
    // full enumerations, not cut short by an early witness
    let mut full = 0;
    for g in ledger.graphs.iter().filter(|g| g.n() >= 2 && g.n() <= 8) {
        let tree = g.spanning_tree(0).map_err(|e| e.to_string())?;
        for b in 1..g.n() {
            let count = enumerate_assignments(&tree, b).count();
            let bound = assignment_count_bound(g.n());
            if count as f64 > bound {
                return Err(format!("full enumeration of {count} for n = {}, b = {b}", g.n()));
            }
            worst = worst.max(count as f64 / bound);
            full += 1;
        }
    }
    Ok(format!(
        "{} decision calls and {full} full enumerations within (n+1)2^(n-1); max ratio {worst:.3}",
        ledger.calls.len()
    ))
}

fn state_counts(ledger: &Ledger) -> Outcome {
    let (mut run_ratio, mut call_ratio): (f64, f64) = (0.0, 0.0);
    for c in &ledger.calls {
        let run = per_run_state_bound(c.n, c.leaves);
        if c.states_max_run as f64 > run {
            return Err(format!("run visited {} states, bound {run} (n = {}, L = {})", c.states_max_run, c.n, c.leaves));
        }
        let call = total_state_bound(c.n, STATE_BASE);
        if c.states_total as f64 > call {
            return Err(format!("call visited {} states, bound {call:.0} (n = {})", c.states_total, c.n));
        }
        run_ratio = run_ratio.max(c.states_max_run as f64 / run);
        call_ratio = call_ratio.max(c.states_total as f64 / call);
    }
    Ok(format!(
        "{} decision calls; max run/3^(n-L)4^L = {run_ratio:.3e}, max call/3(n+1)4.8285^n = {call_ratio:.3e}",
        ledger.calls.len()
    ))
}

fn analyzer_values() -> Outcome {
    let reference = kappa_for(McWeights::new(0.8805, 1.0).unwrap(), 1e-12).kappa;
    if !(4.8280..=4.8290).contains(&reference) {
        return Err(format!("kappa_for(0.8805, 1) = {reference}"));
    }
    let unit = kappa_for(McWeights::unweighted(), 1e-12).kappa;
    if (unit - 5.0).abs() > 1e-6 {
        return Err(format!("kappa_for(1, 1) = {unit}"));
    }
    let best = optimize_weights(&WeightSearch::default()).map_err(|e| e.to_string())?;
    if best.kappa >= 4.83 {
        return Err(format!("optimized kappa {}", best.kappa));
    }
    Ok(format!(
        "kappa(0.8805, 1) = {reference:.6}, kappa(1, 1) = {unit:.9}, optimum {:.6} at ({:.4}, {:.4})",
        best.kappa, best.weights.alpha, best.weights.beta
    ))
}

/// Canonical string of the tree `adj` rooted at `v` (sorted child codes).
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| rooted_code(adj, u, Some(v)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// One representative per isomorphism class of trees on `n` vertices.
fn unlabeled_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::new(1)];
    }
    if n == 2 {
        return vec![Graph::from_edges(2, [(0, 1)]).unwrap()];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for idx in 0..total {
        let mut code = Vec::with_capacity(n - 2);
        let mut x = idx;
        for _ in 0..n - 2 {
            code.push(x % n);
            x /= n;
        }
        let g = Graph::from_edges(n, prufer_edges(n, &code)).unwrap();
        let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        let canon = (0..n).map(|r| rooted_code(&adj, r, None)).min().unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn tree_consistency() -> Outcome {
    let (mut trees, mut cases, mut orderings) = (0, 0, 0);
    for n in 2..=7 {
        for g in unlabeled_trees(n) {
            trees += 1;
            for b in [1, 2].into_iter().filter(|&b| b < n) {
                let found = b_orderings(&g, b, 10).map_err(|e| e.to_string())?;
                for root in 0..n {
                    let tree = g.spanning_tree(root).map_err(|e| e.to_string())?;
                    let accepted: Vec<_> = enumerate_assignments(&tree, b).filter(|phi| edge_filter(phi, &g)).collect();
                    for pi in &found {
                        if !accepted.iter().any(|phi| consistency_witness(phi, pi)) {
                            return Err(format!(
                                "ordering {:?} of tree\n{}has no consistent assignment (root {root}, b = {b})",
                                pi.positions(),
                                g.to_edge_list()
                            ));
                        }
                        orderings += 1;
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{trees} trees, {cases} (root, b) cases, {orderings} orderings covered"))
}

fn medium_instances(ledger: &mut Ledger) -> Outcome {
    let limit = Duration::from_secs(300);
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (seed, p) in [(0u64, 0.2), (1, 0.3), (2, 0.3), (3, 0.4), (4, 0.25), (5, 0.35)] {
        let g = random_connected(14, p, 14_000 + seed).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let r = solve(&g, ledger)?;
        let took = start.elapsed();
        verify_witness(&g, &r)?;
        if took > limit {
            return Err(format!("seed {seed} took {took:?}"));
        }
        slowest = slowest.max(took);
        count += 1;
    }
    Ok(format!("{count} graphs with n = 14 solved optimally; slowest {slowest:.2?}"))
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let timed = |f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let r = f();
        (r, start.elapsed())
    };

    let (c1, t1) = timed(&mut || oracle_equivalence(&mut ledger));
    let c1 = c1.and_then(|s| {
        if t1 > Duration::from_secs(600) {
            Err(format!("took {t1:?}"))
        } else {
            Ok(format!("{s} in {t1:.2?}"))
        }
    });
    let c2 = known_families(&mut ledger);
    let c7 = medium_instances(&mut ledger);
    let c3 = assignment_counts(&ledger);
    let c4 = state_counts(&ledger);
    let c5 = analyzer_values();
    let c6 = tree_consistency();

    let results = [
        ("oracle equivalence", c1),
        ("known families", c2),
        ("assignment count bound", c3),
        ("state count bounds", c4),
        ("weight analysis", c5),
        ("tree orderings covered by assignments", c6),
        ("random n = 14 within time limit", c7),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
