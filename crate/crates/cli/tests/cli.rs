//! End-to-end tests of the `pl` binary: output schema, exit-code contract,
//! environment handling and determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn pl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pl"))
        .args(args)
        .env_remove("PL_TOL")
        .env_remove("PL_DEBUG_TAMPER")
        .output()
        .expect("binary runs")
}

fn pl_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pl"));
    cmd.args(args).env_remove("PL_TOL").env_remove("PL_DEBUG_TAMPER");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("valid JSON")
}

#[test]
fn spin_matrices_json_has_the_diagonal_s3() {
    let doc = json_of(&pl(&["spin-matrices", "--spin", "1", "--format", "json"]));
    assert_eq!(doc["command"], "spin-matrices");
    assert_eq!(doc["spin"], "1");
    let s3 = &doc["payload"]["s3"];
    assert_eq!(s3[0][0][0], 1.0);
    assert_eq!(s3[1][1][0], 0.0);
    assert_eq!(s3[2][2][0], -1.0);
    assert_eq!(s3[0][0][1], 0.0);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn spin_zero_is_a_usage_error() {
    let out = pl(&["spin-matrices", "--spin", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pl(&["spin-matrices", "--spin", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pl(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2), "missing spin flag");
}

#[test]
fn unknown_flags_exit_2() {
    let out = pl(&["spectrum", "--spin", "1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twice_spin_flag_is_equivalent_to_spin() {
    let a = pl(&["traces", "--spin", "3/2", "--max-power", "4"]);
    let b = pl(&["traces", "--twice-spin", "3", "--max-power", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn identical_invocations_are_bit_identical() {
    for args in [
        vec!["spectrum", "--spin", "2", "--format", "json"],
        vec!["lubanski", "--spin", "1/2", "--format", "json"],
        vec!["verify", "--max-twice-spin", "2", "--format", "json"],
    ] {
        let a = pl(&args);
        let b = pl(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}

#[test]
fn spectrum_of_spin_one_contains_the_simple_eigenvalue() {
    let doc = json_of(&pl(&["spectrum", "--spin", "1", "--format", "json"]));
    let predicted = doc["payload"]["predicted"].as_array().unwrap();
    let minus_two = predicted
        .iter()
        .find(|e| (e["value"][0].as_f64().unwrap() + 2.0).abs() < 1e-12)
        .expect("eigenvalue -2 present");
    assert_eq!(minus_two["algebraic_multiplicity"], 1);
    assert_eq!(minus_two["geometric_multiplicity"], 1);
}

#[test]
fn spectrum_of_spin_one_half_omits_the_absent_eigenvalue() {
    let doc = json_of(&pl(&["spectrum", "--spin", "1/2", "--format", "json"]));
    let predicted = doc["payload"]["predicted"].as_array().unwrap();
    assert_eq!(predicted.len(), 3);
    assert!(predicted
        .iter()
        .all(|e| (e["value"][0].as_f64().unwrap() + 1.5).abs() > 1e-6));
}

#[test]
fn traces_row_three_at_spin_one_is_twelve() {
    let doc = json_of(&pl(&["traces", "--spin", "1", "--max-power", "3", "--format", "json"]));
    let rows = doc["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[2]["direct"][0].as_f64().unwrap() - 12.0).abs() < 1e-10);
    assert!(rows[1]["direct"][0].as_f64().unwrap().abs() < 1e-12, "tr(S^2) = 0");
}

#[test]
fn traces_at_spin_five_halves_pass_everywhere() {
    let doc = json_of(&pl(&["traces", "--spin", "5/2", "--max-power", "8", "--format", "json"]));
    let rows = doc["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        assert!(row["relative_residual"].as_f64().unwrap() < 1e-8);
    }
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn casimir_passes_and_warns_on_lightlike() {
    let doc = json_of(&pl(&["casimir", "--spin", "1/2", "--momentum", "1,0,0,0", "--format", "json"]));
    assert_eq!(doc["payload"]["lightlike"], false);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let out = pl(&["casimir", "--spin", "1", "--momentum", "1,1,0,0"]);
    assert_eq!(out.status.code(), Some(0), "lightlike warns, does not fail");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("lightlike"), "stderr: {stderr}");

    let out = pl(&["casimir", "--spin", "1", "--momentum", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2), "short momentum is a usage error");
    let out = pl(&["casimir", "--spin", "1", "--momentum", "1,2,3,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tangle_of_v1_plus_v4() {
    let doc = json_of(&pl(&["tangle", "--state", "v1+v4", "--format", "json"]));
    assert!((doc["payload"]["tangle"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(doc["payload"]["class"], "ghz-class");
    assert_eq!(doc["payload"]["entangled"], true);
}

#[test]
fn tangle_of_v1_minus_v3_vanishes() {
    let doc = json_of(&pl(&["tangle", "--state", "v1-v3", "--format", "json"]));
    assert!(doc["payload"]["tangle"].as_f64().unwrap() < 1e-9);
    assert_eq!(doc["payload"]["entangled"], false);
}

#[test]
fn tangle_cancellation_and_garbage_exit_2() {
    assert_eq!(pl(&["tangle", "--state", "v1-v1"]).status.code(), Some(2));
    assert_eq!(pl(&["tangle", "--state", "v9"]).status.code(), Some(2));
    assert_eq!(pl(&["tangle", "--state", ""]).status.code(), Some(2));
}

#[test]
fn verify_small_sweep_exits_zero() {
    let out = pl(&["verify", "--max-twice-spin", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("checks passed"));
}

#[test]
fn verify_at_spin_one_half_includes_the_tangle_block() {
    let doc = json_of(&pl(&["verify", "--max-twice-spin", "1", "--format", "json"]));
    let names: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for needle in ["entangle.tangle_v1", "entangle.tangle_v1+v4", "entangle.schmidt_rank1_v2_1|23"] {
        assert!(
            names.iter().any(|n| n.contains(needle)),
            "missing {needle} in {names:?}"
        );
    }
}

#[test]
fn tampering_fails_the_verify_run_naming_the_identity() {
    let out = pl_env(&["verify", "--max-twice-spin", "1"], &[("PL_DEBUG_TAMPER", "1")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("s=1/2 spin.comm"), "failing identity is named with its spin");
}

#[test]
fn pl_tol_env_var_is_honoured_and_the_flag_wins() {
    // An impossible tolerance makes even exact identities fail under --strict.
    let out = pl_env(&["spin-matrices", "--spin", "3/2", "--strict"], &[("PL_TOL", "1e-300")]);
    assert_eq!(out.status.code(), Some(1));
    // ... unless the flag overrides it.
    let out = pl_env(
        &["spin-matrices", "--spin", "3/2", "--strict", "--tol", "1e-10"],
        &[("PL_TOL", "1e-300")],
    );
    assert_eq!(out.status.code(), Some(0));
    // Garbage in the env var is a usage error.
    let out = pl_env(&["spin-matrices", "--spin", "3/2"], &[("PL_TOL", "banana")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn without_strict_check_failures_still_exit_zero() {
    let out = pl_env(&["spin-matrices", "--spin", "3/2"], &[("PL_TOL", "1e-300")]);
    assert_eq!(out.status.code(), Some(0), "failures are data without --strict");
}

#[test]
fn json_round_trips_for_matrices_and_reports() {
    let out = pl(&["lubanski", "--spin", "1/2", "--format", "json"]);
    let doc = json_of(&out);
    // document round-trip
    let text = serde_json::to_string(&doc).unwrap();
    let reparsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, reparsed);
    // matrix payload parses back to the exact operator
    let t = pl_core::make_spin_matrices(pl_core::HalfInteger::from_twice(1)).unwrap();
    let expected = pl_core::lubanski::s_matrix(&t);
    let rows = doc["payload"]["s"].as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            let re = entry[0].as_f64().unwrap();
            let im = entry[1].as_f64().unwrap();
            assert_eq!(re, expected[(i, j)].re, "({i},{j}) re");
            assert_eq!(im, expected[(i, j)].im, "({i},{j}) im");
        }
    }
}
