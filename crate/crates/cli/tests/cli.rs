use std::path::Path;
use std::process::{Command, Output};

fn triaffine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triaffine"))
        .args(args)
        .output()
        .expect("spawn triaffine")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_system(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn dim_reports_theorem_a_for_j49() {
    let o = triaffine(&["dim", "--example", "j49"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("theorem: A"), "{text}");
    assert!(text.contains("dimension: 1.279468303"), "{text}");
}

#[test]
fn no_theorem_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write_system(
        dir.path(),
        "s.json",
        r#"{"maps":[{"c":0.6,"b":0.7,"d":0,"u":0,"v":0},{"c":0.6,"b":0.7,"d":0,"u":0.4,"v":0.3}]}"#,
    );
    let o = triaffine(&["dim", "--system", &sys]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("theorem: none"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let outside = write_system(
        dir.path(),
        "s.json",
        r#"{"maps":[{"c":0.6,"b":0.5,"d":0,"u":0.5,"v":0},{"c":0.3,"b":0.5,"d":0,"u":0,"v":0.5}]}"#,
    );
    assert_eq!(triaffine(&["dim", "--system", &outside]).status.code(), Some(2));
    let garbled = write_system(dir.path(), "g.json", "{\"maps\": [");
    assert_eq!(triaffine(&["dim", "--system", &garbled]).status.code(), Some(2));
    assert_eq!(triaffine(&["dim", "--example", "nope"]).status.code(), Some(2));
    assert_eq!(triaffine(&["sweep", "--c", "0.5"]).status.code(), Some(2));
}

#[test]
fn enumeration_guard_exits_4() {
    let o = triaffine(&["check", "--kind", "delta", "--n", "40", "--ratio", "1/2", "--offsets", "0,1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn exact_delta_prints_fraction() {
    let o = triaffine(&["check", "--kind", "delta", "--n", "5", "--ratio", "1/2", "--offsets", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("delta: 1/16"), "{}", stdout(&o));
}

#[test]
fn ssp_certifies_j29() {
    let o = triaffine(&["check", "--example", "j29", "--kind", "ssp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("reproduced"), "{text}");
}

#[test]
fn estimate_csv_header_and_summary() {
    let o = triaffine(&["estimate", "--example", "j49", "--points", "50000", "--scales", "3:6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scale,statistic,log_scale,log_statistic"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4);
    assert!(text.lines().any(|l| l.starts_with("# method=box")), "{text}");
}

#[test]
fn sweep_single_step() {
    let o = triaffine(&["sweep", "--c", "0.8", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["b,dim,breakpoint", "0.010000,1.190106,0.416667"]);
}

#[test]
fn cloud_csv_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let o = triaffine(&["cloud", "--example", "j33", "--points", "100", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("x,y"));
    assert_eq!(text.lines().count(), 101);
}
