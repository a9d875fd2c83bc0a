use std::fs;
use std::process::{Command, Output};

use bc2::json::{matrix_from_json, rational_from_json, MatrixJson, ReportJson};
use bc2_core::expansion::l_matrices;
use bc2_core::lie::PairParams;
use bc2_core::reference::s_x_printed;
use bc2_core::symbolic::rational::q;
use bc2_core::symbolic::{PolyMatrix, Vars};
use serde::Deserialize;

fn bc2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bc2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[derive(Deserialize)]
struct MatrixOut {
    params: String,
    matrix: MatrixJson,
}

#[test]
fn verify_all_small_grid_succeeds() {
    let o = bc2(&[
        "verify", "all", "--m", "3", "--a", "1", "--b", "0", "--dmax", "2", "--format", "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r: ReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.summary.fail, 0);
    assert!(r.summary.pass > 0);
    assert_eq!(r.checks.len(), r.summary.pass + r.summary.reported);
}

#[test]
fn forbidden_parameters_are_an_error() {
    let o = bc2(&["weight", "--m", "3", "--a", "2", "--b", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = bc2(&["dims", "--m", "2", "--a", "0", "--b", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = bc2(&["verify", "nonsense", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn xi_suite_reports_discrepancies() {
    let o = bc2(&["verify", "xi", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("REPORTED")));
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn weight_json_round_trips_and_matches_reference() {
    for a in [1, 2] {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        let a_s = a.to_string();
        let o = bc2(&[
            "weight",
            "--m",
            "3",
            "--a",
            &a_s,
            "--b",
            "0",
            "--coords",
            "x",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let parsed: MatrixOut = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parsed.params, format!("m=3,a={},b=0", a));
        let mat = matrix_from_json(&parsed.matrix).unwrap();
        let reference = s_x_printed(a).unwrap().unwrap();
        assert_eq!(mat, reference);
    }
}

#[test]
fn weight_in_x_requires_b_zero() {
    let o = bc2(&[
        "weight", "--m", "3", "--a", "1", "--b", "1", "--coords", "x",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degree_zero_polynomial_is_the_transition_matrix() {
    let o = bc2(&["polys", "--m", "4", "--a", "2", "--b", "1", "--d", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed: MatrixOut = serde_json::from_str(&stdout(&o)).unwrap();
    let mat = matrix_from_json(&parsed.matrix).unwrap();
    let (l, _) = l_matrices(&PairParams::new(4, 2, 1).unwrap()).unwrap();
    assert_eq!(mat, PolyMatrix::from_constants(&Vars::x(), &l));
}

#[derive(Deserialize)]
struct DimRow {
    label: [i64; 3],
    dim: String,
    eigenvalue: String,
}

#[test]
fn trivial_label_has_dimension_one() {
    let o = bc2(&[
        "dims", "--m", "3", "--a", "0", "--b", "0", "--label", "0,0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<DimRow> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].label, [0, 0, 0]);
    assert_eq!(rows[0].dim, "1");
    assert_eq!(rational_from_json(&rows[0].eigenvalue).unwrap(), q(0, 1));
}

#[test]
fn dims_lists_every_label() {
    let o = bc2(&["dims", "--m", "3", "--a", "1", "--b", "0", "--dmax", "1"]);
    let rows: Vec<DimRow> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 2 * 3);
}

#[derive(Deserialize)]
struct MomentOut {
    delta_moment: String,
}

#[test]
fn torus_mass() {
    let o = bc2(&["moments", "--m", "3", "--monomial", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: MomentOut = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rational_from_json(&v.delta_moment).unwrap(), q(1, 36));
}

#[test]
fn csv_export_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let o = bc2(&[
        "export",
        "--kind",
        "weight",
        "--m",
        "3",
        "--a",
        "1",
        "--points",
        "50",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x1,x2,entry_0_0,entry_0_1,entry_1_0,entry_1_1,in_region"
    );
    let (n1, n2) = bc2::export::grid_shape(50);
    assert_eq!(lines.count(), n1 * n2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "transition",
        "--m",
        "3,4",
        "--a",
        "0,1",
        "--b",
        "0",
        "--dmax",
        "2",
    ];
    let first = bc2(&args);
    let second = bc2(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn wrong_arity_is_an_error() {
    let o = bc2(&["polys", "--m", "3", "--a", "0", "--b", "0", "--d", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bc2(&["moments", "--m", "3", "--monomial", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
