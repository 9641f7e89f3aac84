use std::process::{Command, Output};

use depthzero_cli::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthzero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn structured(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "structured"]);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    Report::from_structured(&stdout(&o)).expect("valid structured output")
}

#[test]
fn rootinfo_a2() {
    let Report::Rootinfo(r) = structured(&["rootinfo", "--spec", "A2"]) else { panic!("wrong kind") };
    assert_eq!((r.roots, r.weyl_order), (6, 6));
    assert_eq!(r.poincare.to_string(), "q^3 + 2q^2 + 2q + 1");
    assert_eq!(r.coxeter_torus_order.to_string(), "q^2 + q + 1");
}

#[test]
fn rootinfo_g2_and_product() {
    let Report::Rootinfo(g2) = structured(&["rootinfo", "--spec", "G2"]) else { panic!("wrong kind") };
    assert_eq!((g2.roots, g2.long_roots, g2.short_roots), (12, 6, 6));
    let Report::Rootinfo(aa) = structured(&["rootinfo", "--spec", "A1+A1"]) else { panic!("wrong kind") };
    assert_eq!((aa.roots, aa.weyl_order), (4, 4));
}

#[test]
fn mackey_a2_headline_row() {
    let Report::Mackey(r) = structured(&["mackey", "--spec", "A2", "--x", "0,0", "--y", "0,0", "--bound", "2"]) else {
        panic!("wrong kind")
    };
    let row = r.rows.iter().find(|row| row.component.ell == vec![1, 1]).unwrap();
    assert_eq!(row.component.degree.as_ref().unwrap().to_string(), "q^7 + q^6 - q^5 - 2q^4 - q^3 + q^2 + q");
    assert_eq!((row.component.depth_lower, row.component.depth_upper), (1, 2));
    let tau = r.rows.iter().find(|row| row.component.ell == vec![0, 0]).unwrap();
    assert!(tau.component.is_tau);
}

#[test]
fn mackey_window_with_only_tau() {
    let o = run(&["mackey", "--spec", "A2", "--x", "0,0", "--y", "0,0", "--bound", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("component = tau"));
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 1);
}

#[test]
fn mackey_non_special_vertex_has_equal_depth_bounds() {
    let Report::Mackey(r) = structured(&["mackey", "--spec", "C2", "--x", "0,1/2", "--y", "0,0", "--bound", "1"]) else {
        panic!("wrong kind")
    };
    assert_eq!(r.local_type, "A1+A1");
    assert!(r.rows.iter().all(|row| row.component.depth_lower == row.component.depth_upper));
}

#[test]
fn usage_errors_exit_with_two() {
    let bad_spec = run(&["rootinfo", "--spec", "A2+x3"]);
    assert_eq!(bad_spec.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_spec.stderr).contains("column 4"));
    assert_eq!(run(&["rootinfo"]).status.code(), Some(2));
    let bad_point = run(&["mackey", "--spec", "A2", "--x", "0", "--y", "0,0"]);
    assert_eq!(bad_point.status.code(), Some(2));
}

#[test]
fn verify_with_level2_reports_seven_double_cosets() {
    let o = run(&["verify", "--level2", "--gxromega", "G2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("seven double cosets: 7"));
    assert!(text.contains("equality fails at"));
    assert!(text.contains("[finite-level only]"));
}

#[test]
fn structured_verify_round_trips_and_is_sorted() {
    let o = run(&["verify", "--q", "2", "--sl2-q", "3", "--format", "structured"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let report = Report::from_structured(&text).unwrap();
    assert_eq!(report.to_structured().unwrap() + "\n", text);
    let Report::Verify(v) = report else { panic!("wrong kind") };
    let ids: Vec<&String> = v.checks.iter().map(|c| &c.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn guarded_q_is_skipped_without_failing() {
    let o = run(&["verify", "--q", "5", "--sl2-q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[SKIP] finlab.sl3.q05.build"));
}

#[test]
fn out_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cache = dir.path().join("tables.json");
    let args = [
        "verify",
        "--q",
        "2",
        "--sl2-q",
        "3",
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
        "--cache",
        cache.to_str().unwrap(),
    ];
    assert!(run(&args).status.success());
    let first = std::fs::read_to_string(&out).unwrap();
    let cached = std::fs::read_to_string(&cache).unwrap();
    assert!(cached.contains("SL(3,2)") && cached.contains("SL(2,3)"));
    // second run reads the tables back and must produce the same report
    assert!(run(&args).status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}
