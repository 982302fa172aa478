//! Compiles and runs a C program against the generated header and the
//! static library.

use std::env;
use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bandwidth_ffi.h"

int main(void) {
    BwGraph *g = NULL;
    if (bw_graph_parse("4 3\n0 1\n1 2\n2 3\n", &g) != BW_STATUS_OK) return 10;
    BwResult *r = NULL;
    BwOptions opts = bw_options_default();
    if (bw_solve(g, &opts, &r) != BW_STATUS_OK) return 11;
    if (bw_result_bandwidth(r) != 1 || !bw_result_is_optimal(r)) return 12;
    size_t pos[4];
    if (bw_result_positions(r, pos, 4) != 4) return 13;
    char *json = bw_result_to_json(r);
    if (json == NULL || strstr(json, "\"optimal\"") == NULL) return 14;
    bw_string_free(json);
    bw_result_free(r);
    if (bw_decide(g, 1, NULL, NULL) != BW_STATUS_OK) return 15;
    BwResult *bad = NULL;
    if (bw_oracle(g, 3, &bad) != BW_STATUS_TOO_LARGE || bw_last_error() == NULL) return 16;
    bw_graph_free(g);
    puts("ok");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // the test binary lives in <target>/<profile>/deps
    let exe = env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libbandwidth_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let cc = env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap_or_else(|e| panic!("could not run {cc}: {e}"));
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
