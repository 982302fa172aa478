use std::ffi::{CStr, CString};
use std::ptr;

use bandwidth_ffi::*;

fn parse(text: &str) -> *mut BwGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bw_graph_parse(text.as_ptr(), &mut g) }, BwStatus::Ok);
    g
}

fn last_error() -> String {
    let p = bw_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn solve_star_through_handles() {
    let g = parse("# star with 5 leaves\n6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n");
    unsafe {
        assert_eq!(bw_graph_vertex_count(g), 6);
        assert_eq!(bw_graph_edge_count(g), 5);
        let mut r = ptr::null_mut();
        assert_eq!(bw_solve(g, ptr::null(), &mut r), BwStatus::Ok);
        assert_eq!(bw_result_bandwidth(r), 3);
        assert_eq!(bw_result_lower_bound(r), 3);
        assert!(bw_result_is_optimal(r));

        let n = bw_result_positions(r, ptr::null_mut(), 0);
        assert_eq!(n, 6);
        let mut pos = vec![0usize; n];
        bw_result_positions(r, pos.as_mut_ptr(), n);
        let mut sorted = pos.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=6).collect::<Vec<_>>());
        let width = [1, 2, 3, 4, 5].iter().map(|&v| pos[0].abs_diff(pos[v])).max().unwrap();
        assert_eq!(width, 3);

        let json = bw_result_to_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        bw_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["bandwidth"], 3);
        assert_eq!(v["status"], "optimal");
        assert_eq!(v["ordering"].as_array().unwrap().len(), 6);

        bw_result_free(r);
        bw_graph_free(g);
    }
}

#[test]
fn decide_is_tri_state() {
    unsafe {
        let g = bw_graph_new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                assert_eq!(bw_graph_add_edge(g, u, v), BwStatus::Ok);
            }
        }
        assert_eq!(bw_decide(g, 2, ptr::null(), ptr::null_mut()), BwStatus::No);

        let mut w = ptr::null_mut();
        assert_eq!(bw_decide(g, 3, ptr::null(), &mut w), BwStatus::Ok);
        assert!(!w.is_null());
        assert_eq!(bw_result_bandwidth(w), 3);
        bw_result_free(w);

        let mut opts = bw_options_default();
        opts.max_states = 10;
        assert_eq!(bw_decide(g, 2, &opts, ptr::null_mut()), BwStatus::Unknown);
        assert!(last_error().contains("budget"));
        bw_graph_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let bad = CString::new("3 2\n0 1\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(bw_graph_parse(bad.as_ptr(), &mut g), BwStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("expected 2 edges"));

        assert_eq!(bw_graph_parse(ptr::null(), &mut g), BwStatus::NullPointer);

        let g = bw_graph_new(3);
        assert_eq!(bw_graph_add_edge(g, 1, 1), BwStatus::InvalidArgument);
        assert_eq!(bw_graph_add_edge(g, 0, 7), BwStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert_eq!(bw_graph_add_edge(ptr::null_mut(), 0, 1), BwStatus::NullPointer);

        let mut r = ptr::null_mut();
        assert_eq!(bw_oracle(g, 2, &mut r), BwStatus::TooLarge);
        assert!(r.is_null());
        assert_eq!(bw_oracle(g, 10, &mut r), BwStatus::Ok);
        assert_eq!(bw_result_bandwidth(r), 0);
        bw_result_free(r);
        bw_graph_free(g);

        // freeing null is a no-op
        bw_graph_free(ptr::null_mut());
        bw_result_free(ptr::null_mut());
        bw_string_free(ptr::null_mut());
    }
}

#[test]
fn oracle_and_solver_agree_on_a_cycle() {
    let g = parse("6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bw_solve(g, ptr::null(), &mut a), BwStatus::Ok);
        assert_eq!(bw_oracle(g, 10, &mut b), BwStatus::Ok);
        assert_eq!(bw_result_bandwidth(a), 2);
        assert_eq!(bw_result_bandwidth(b), 2);
        bw_result_free(a);
        bw_result_free(b);
        bw_graph_free(g);
    }
}

#[test]
fn weight_analysis() {
    let mut kappa = 0.0;
    unsafe {
        assert_eq!(bw_kappa_for(1.0, 1.0, &mut kappa), BwStatus::Ok);
        assert!((kappa - 5.0).abs() < 1e-6);
        assert_eq!(bw_kappa_for(0.8805, 1.0, &mut kappa), BwStatus::Ok);
        assert!((4.8280..=4.8290).contains(&kappa));
        assert_eq!(bw_kappa_for(0.0, 1.0, &mut kappa), BwStatus::InvalidArgument);

        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(bw_optimize_weights(&mut a, &mut b, &mut kappa), BwStatus::Ok);
        assert!(kappa < 4.83, "{kappa}");
        assert!(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0);
    }
}
