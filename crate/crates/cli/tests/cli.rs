use std::path::PathBuf;
use std::process::{Command, Output};

use hermlat_core::general_type::find_case;
use hermlat_core::lattices::hermitian as models;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn hermlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermlat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn kv(o: &Output, key: &str) -> Vec<String> {
    let prefix = format!("{key}=");
    stdout(o).lines().filter_map(|l| l.strip_prefix(&prefix).map(str::to_string)).collect()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn seisu_has_no_violations() {
    let o = hermlat(&["seisu", "--max", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 violations"));
}

#[test]
fn rst_scan_flags_dimension_three() {
    let o = hermlat(&["rst-scan", "--n-min", "3", "--n-max", "3", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(kv(&o, "min_age"), ["5/6"]);
    assert_eq!(kv(&o, "witness_v"), ["0,3,0,0,0"]);
    let o = hermlat(&["rst-scan", "--n-min", "4", "--n-max", "8", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(kv(&o, "at_least_one").iter().all(|v| v == "true"));
}

#[test]
fn catalog_verifies() {
    let o = hermlat(&["catalog", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8/8 cases GENERAL_TYPE_CONDITIONAL_ON_STAR"));
    let o = hermlat(&["catalog", "--format", "kv"]);
    assert_eq!(kv(&o, "case").len(), 8);
}

#[test]
fn general_type_depends_on_star_flag() {
    let o = hermlat(&["general-type", "--case", "d1-A1x2", "--assume-star", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(kv(&o, "status"), ["GENERAL_TYPE_CONDITIONAL_ON_STAR"]);
    assert_eq!(kv(&o, "weight"), ["14"]);
    assert_eq!(kv(&o, "root_weight"), ["7"]);
    let o = hermlat(&["general-type", "--case", "d1-A1x2", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(kv(&o, "failed"), ["star hypothesis not assumed"]);
    let o = hermlat(&["general-type", "--case", "no-such-case"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn general_type_from_file() {
    let o = hermlat(&["general-type", "--file", &path("case_a2.json"), "--assume-star", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(kv(&o, "root_count"), ["6"]);
    assert!(kv(&o, "candidate")[0].ends_with("excluded (not even)"));
}

#[test]
fn trace_form_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d4_q.json");
    let o = hermlat(&["trace-form", &path("eisenstein_d4.json")]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&out, &o.stdout).unwrap();
    let via_file = hermlat(&["analyze", out.to_str().unwrap(), "--format", "kv"]);
    let direct = hermlat(&["analyze", &path("eisenstein_d4.json"), "--format", "kv"]);
    for key in ["signature", "det", "even", "discriminant_group"] {
        assert_eq!(kv(&via_file, key), kv(&direct, &format!("trace_{key}")), "{key}");
    }
    // in-process trace form of the same Gram matrix
    let case = find_case("d3-D4").unwrap();
    let q = case.sub.trace_lattice();
    assert_eq!(kv(&via_file, "det"), [q.determinant().to_string()]);
    assert_eq!(kv(&via_file, "signature"), [q.signature().to_string()]);
    let o = hermlat(&["identify", out.to_str().unwrap(), "--format", "kv"]);
    assert_eq!(kv(&o, "root_system"), ["D4"]);
}

#[test]
fn kv_output_is_deterministic() {
    let args = ["general-type", "--case", "d3-A2+D4", "--assume-star", "--format", "kv"];
    assert_eq!(hermlat(&args).stdout, hermlat(&args).stdout);
    let args = ["analyze", &path("gauss_b_minus.json"), "--format", "kv"];
    let (a, b) = (hermlat(&args), hermlat(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(kv(&a, "trace_unimodular"), ["true"]);
    // the trace form of B(-1) is the printed block up to sign
    let q = models::matrix_b().trace_lattice();
    assert_eq!(kv(&a, "trace_det"), [q.determinant().to_string()]);
}

#[test]
fn roots_and_identify() {
    let o = hermlat(&["roots", &path("e8.json"), "--format", "kv"]);
    assert_eq!(kv(&o, "count"), ["240"]);
    let o = hermlat(&["roots", &path("a2.json"), "--norm", "6", "--format", "kv"]);
    assert_eq!(kv(&o, "count"), ["6"]);
    let o = hermlat(&["roots", &path("gauss_minus_one.json"), "--format", "kv"]);
    assert_eq!(kv(&o, "norm"), ["-2"]);
    assert_eq!(kv(&o, "count"), ["4"]);
    let o = hermlat(&["identify", &path("d4.json"), "--format", "kv"]);
    assert_eq!(kv(&o, "root_system"), ["D4"]);
}

#[test]
fn large_rank_needs_opt_in() {
    let o = hermlat(&["roots", &path("a17.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-large-rank"));
    let o = hermlat(&["roots", &path("a17.json"), "--allow-large-rank", "--format", "kv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(kv(&o, "count"), ["306"]);
}

#[test]
fn complements() {
    let o = hermlat(&["complement", &path("e8.json"), &path("e8_first.json"), "--format", "kv"]);
    assert_eq!(kv(&o, "rank"), ["7"]);
    assert_eq!(kv(&o, "root_system"), ["E7"]);
    let o = hermlat(&["complement", &path("gauss_b_minus.json"), &path("gauss_first.json"), "--format", "kv"]);
    assert_eq!(kv(&o, "rank"), ["3"]);
    assert_eq!(kv(&o, "trace_discriminant_group"), ["Z/2 + Z/2"]);
}

#[test]
fn isometry_exit_codes() {
    let o = hermlat(&["isometric", &path("a2.json"), &path("a2_alt.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = hermlat(&["isometric", &path("a2.json"), &path("a1x2.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn age_report() {
    let o = hermlat(&["age", "--order", "3", "--exponents", "1,2", "--format", "kv"]);
    assert_eq!(kv(&o, "age"), ["1"]);
    let o = hermlat(&["age", "--order", "4", "--exponents", "0,0,2", "--format", "kv"]);
    assert_eq!(kv(&o, "reflection"), ["true"]);
}

#[test]
fn input_errors_exit_2() {
    let o = hermlat(&["analyze", &path("decimal.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("decimal number 2.0") && err.contains("line 4 column"), "{err}");
    let o = hermlat(&["roots", &path("hyperbolic.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("indefinite"));
    let o = hermlat(&["analyze", &path("missing.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = hermlat(&["seisu", "--max", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hermlat(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}
