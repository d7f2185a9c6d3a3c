use std::path::Path;
use std::process::{Command, Output};

use pfclab::report::Report;
use pfclab::tensor::read_operator;
use pfclab::Operator;

fn pfclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfclab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_run_exits_zero_and_writes_a_parseable_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("amp.txt");
    let o = pfclab(&["run", "amplification", "--seed", "3", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text, stdout(&o));
    let rep: Report = text.parse().unwrap();
    assert_eq!(rep.experiment, "amplification");
    assert_eq!(rep.seed, 3);
    assert!(rep.passed());
}

#[test]
fn unknown_experiment_is_an_error() {
    let o = pfclab(&["run", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown experiment"));
}

#[test]
fn invalid_parameters_are_errors_not_failures() {
    let o = pfclab(&["run", "distinct-data", "--d", "2", "--t", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn runs_are_reproducible() {
    let a = pfclab(&["run", "teleport", "--probes", "6", "--seed", "9"]);
    let b = pfclab(&["run", "teleport", "--probes", "6", "--seed", "9"]);
    let body = |o: &Output| stdout(o).parse::<Report>().unwrap().body();
    assert_eq!(body(&a), body(&b));
}

#[test]
fn suite_reads_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.conf");
    let out_dir = dir.path().join("reports");
    std::fs::write(
        &cfg,
        format!(
            "# two quick experiments\nlevel = smoke\nseed = 4\nexperiments = pf-closed-form, amplification\nout_dir = {}\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let o = pfclab(&["suite", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut files: Vec<_> = std::fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    files.sort();
    assert_eq!(files, ["00-pf-closed-form.txt", "01-amplification.txt"]);
    for f in files {
        let rep: Report = std::fs::read_to_string(out_dir.join(f)).unwrap().parse().unwrap();
        assert_eq!(rep.seed, 4);
    }
}

#[test]
fn char_table_prints_labelled_rows() {
    let o = pfclab(&["char-table", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    // Columns are cycle types (3), (2,1), (1,1,1); the sign representation
    // is -1 on transpositions and the standard one has dimension 2.
    let row = |label: &str| -> Vec<i64> {
        let line = lines[1..].iter().find(|l| l.split_whitespace().next() == Some(label)).unwrap();
        line.split_whitespace().skip(1).map(|v| v.parse().unwrap()).collect()
    };
    assert_eq!(row("(1,1,1)"), [1, -1, 1]);
    assert_eq!(row("(2,1)"), [-1, 0, 2]);
    assert_eq!(row("(3)"), [1, 1, 1]);
}

#[test]
fn sweep_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let o = pfclab(&["sweep", "distinct-data", "--param", "d", "--values", "4,8", "--t", "2", "--csv", path(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,measured,bound,stderr,verdict");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,") && lines[2].starts_with("8,"));
}

#[test]
fn dumped_ensemble_members_read_back_as_unitaries() {
    let dir = tempfile::tempdir().unwrap();
    for (name, extra) in [("clifford", vec!["--index", "7"]), ("pfc", vec![]), ("haar", vec!["--d", "3"])] {
        let file = dir.path().join(format!("{name}.txt"));
        let mut args = vec!["dump-ensemble", name, "--out", path(&file)];
        args.extend(extra);
        let o = pfclab(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let u: Operator = read_operator(&std::fs::read_to_string(&file).unwrap()).unwrap();
        assert!(u.is_isometry(1e-12), "{name}");
    }
    let o = pfclab(&["dump-ensemble", "keyed-pfc"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NOT SECURE"));
    assert_eq!(pfclab(&["dump-ensemble", "nope"]).status.code(), Some(2));
}
