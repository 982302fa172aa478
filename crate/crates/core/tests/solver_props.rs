use bandwidth::generate::{generate, random_connected, Family};
use bandwidth::oracle::oracle_bandwidth;
use bandwidth::solver::{decide_any, lower_bound};
use bandwidth::{decide, minimize_bandwidth, Budget, Decision, Graph, SolverConfig, Status};

#[test]
fn decisions_are_monotone_in_b() {
    let cfg = SolverConfig::default();
    for seed in 0..12 {
        let g = random_connected(8, 0.4, seed).unwrap();
        let bw = oracle_bandwidth(&g, 10).unwrap().bandwidth;
        for b in 1..g.n() {
            let (d, _) = decide(&g, b, &cfg).unwrap();
            match d {
                Decision::Yes(pi) => {
                    assert!(b >= bw);
                    assert!(pi.bandwidth(&g) <= b);
                }
                Decision::No => assert!(b < bw),
                Decision::Unknown(h) => panic!("unexpected {h:?}"),
            }
        }
    }
}

#[test]
fn lower_bound_never_exceeds_bandwidth() {
    for seed in 0..40 {
        let n = 4 + (seed as usize % 6);
        let g = random_connected(n, 0.35, seed).unwrap();
        let bw = oracle_bandwidth(&g, 10).unwrap().bandwidth;
        assert!(lower_bound(&g).unwrap() <= bw);
    }
    let k4 = generate(Family::Complete { n: 4 }, 0).unwrap();
    assert_eq!(lower_bound(&k4).unwrap(), 3);
}

#[test]
fn components_are_solved_separately_and_laid_out_in_blocks() {
    // a 5-cycle on {0, 2, 4, 6, 8} and a path on {1, 3, 5}, plus isolated 7
    let g = Graph::from_edges(
        9,
        [(0, 2), (2, 4), (4, 6), (6, 8), (8, 0), (1, 3), (3, 5)],
    )
    .unwrap();
    let r = minimize_bandwidth(&g, &SolverConfig::default()).unwrap();
    assert_eq!(r.status, Status::Optimal);
    assert_eq!(r.bandwidth, 2);
    assert_eq!(r.ordering.bandwidth(&g), 2);
    let cycle_block: Vec<usize> = [0, 2, 4, 6, 8].iter().map(|&v| r.ordering.position(v)).collect();
    assert!(cycle_block.iter().all(|&p| p <= 5), "{cycle_block:?}");
    assert_eq!(r.ordering.position(7), 9);
    assert_eq!(oracle_bandwidth(&g, 10).unwrap().bandwidth, 2);

    assert!(matches!(decide_any(&g, 1, &SolverConfig::default()).unwrap().0, Decision::No));
    assert!(matches!(decide_any(&g, 2, &SolverConfig::default()).unwrap().0, Decision::Yes(_)));
}

#[test]
fn edgeless_and_tiny_graphs() {
    let cfg = SolverConfig::default();
    for n in 1..4 {
        let r = minimize_bandwidth(&Graph::new(n), &cfg).unwrap();
        assert_eq!(r.bandwidth, 0);
        assert_eq!(r.status, Status::Optimal);
    }
    let p2 = generate(Family::Path { n: 2 }, 0).unwrap();
    assert_eq!(minimize_bandwidth(&p2, &cfg).unwrap().bandwidth, 1);
}

#[test]
fn answers_do_not_depend_on_root_or_workers() {
    for seed in 0..6 {
        let g = random_connected(9, 0.3, 500 + seed).unwrap();
        let expected = oracle_bandwidth(&g, 10).unwrap().bandwidth;
        for root in [0, 4, 8] {
            for workers in [1, 4] {
                let cfg = SolverConfig {
                    root,
                    workers,
                    ..SolverConfig::default()
                };
                let r = minimize_bandwidth(&g, &cfg).unwrap();
                assert_eq!(r.bandwidth, expected, "root {root}, workers {workers}");
                assert_eq!(r.ordering.bandwidth(&g), expected);
            }
        }
    }
}

#[test]
fn exhausted_budget_is_reported_as_unknown() {
    let g = random_connected(10, 0.3, 3).unwrap();
    let cfg = SolverConfig {
        budget: Budget {
            max_states_per_run: 2,
            ..Budget::default()
        },
        ..SolverConfig::default()
    };
    let r = minimize_bandwidth(&g, &cfg).unwrap();
    assert_eq!(r.status, Status::Unknown);
    assert!(r.lower_bound < r.bandwidth);
    assert_eq!(r.ordering.bandwidth(&g), r.bandwidth);

    let k4 = generate(Family::Complete { n: 4 }, 0).unwrap();
    let capped = SolverConfig {
        budget: Budget {
            max_states_total: Some(10),
            ..Budget::default()
        },
        ..SolverConfig::default()
    };
    assert!(matches!(decide(&k4, 2, &capped).unwrap().0, Decision::Unknown(_)));
    assert_eq!(decide(&k4, 2, &SolverConfig::default()).unwrap().0, Decision::No);
}
