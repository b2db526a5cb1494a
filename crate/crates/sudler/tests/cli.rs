//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sudler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn convergents_table() {
    let out = run(&["convergents", "--alpha", "golden", "--n", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let q: Vec<&str> = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(q, vec!["0", "1", "1", "2", "3", "5", "8", "13"]);

    let out = run(&["convergents", "--alpha", "e", "--n", "6"]);
    let text = stdout(&out);
    let q: Vec<&str> = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(q, vec!["0", "1", "1", "3", "4", "7", "32"]);
}

#[test]
fn header_and_comment_line() {
    let out = run(&["convergents", "--alpha", "golden", "--n", "3"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    let comment = lines.next().unwrap();
    assert!(comment.starts_with("# spec=golden precision_bits=160 version="));
    assert_eq!(lines.next().unwrap(), "n,a_n,p_n,q_n");
}

#[test]
fn invalid_spec_exits_2() {
    let out = run(&["convergents", "--alpha", "nonsense", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn ostrowski_digits() {
    let out = run(&["ostrowski", "--alpha", "golden", "--n", "6", "--t", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0,1,0,1");
}

#[test]
fn ostrowski_out_of_range_exits_3() {
    // q_6 of the golden ratio is 8, so t = 8 is outside the validity range.
    let out = run(&["ostrowski", "--alpha", "golden", "--n", "6", "--t", "8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dt_table_matches_oracle() {
    // Base value 3/5 sits at n = 5; D_4 vanishes there.
    let out = run(&["dt", "--alpha", "golden", "--n", "5", "--tmax", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert_eq!(last, "4,0,0,4");
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], cells[2], "closed form vs direct sum in {line}");
    }
}

#[test]
fn sudler_rows_and_residuals() {
    let out = run(&["sudler", "--alpha", "golden", "--n-range", "5..18"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 14);
    let header = text.lines().nth(1).unwrap();
    assert_eq!(
        header,
        "spec,n,q_n,log_P,A_n,log_B_n,C_n,residual,c_n,S_n,core,ratio,Y_n"
    );
    let residual_col = 7;
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        let residual: f64 = cells[residual_col].parse().unwrap();
        assert!(residual < 1e-8, "residual {residual} in {row}");
    }
}

#[test]
fn deterministic_output_bytes() {
    let args = ["sudler", "--alpha", "quad:|1,1,2", "--n-range", "6..12", "--threads", "1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn probe_twos_converges() {
    let out = run(&["probe", "--alpha", "twos:2", "--select", "twos", "--imax", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let verdict_col = 7;
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[verdict_col], "converging", "row {line}");
    }
}

#[test]
fn figure_writes_csv_and_svg() {
    let dir = std::env::temp_dir().join(format!("sudler-fig-{}", std::process::id()));
    let out = run(&["figure", "fig1b", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("fig1b.csv")).unwrap();
    assert!(csv.lines().count() > 10);
    assert!(csv.lines().nth(1).unwrap() == "series,n,q_n,P");
    let svg = std::fs::read_to_string(dir.join("fig1b.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn estimate_columns() {
    let out = run(&["estimate", "--alpha", "golden", "--n-range", "10..12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("spec,n,q_n,c_n,S_n,core,P,ratio,Y_n"));
    assert_eq!(text.lines().skip(2).count(), 3);
}

#[test]
fn selfcheck_passes() {
    let out = run(&["selfcheck"]);
    assert!(out.status.success(), "selfcheck failed:\n{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().count() >= 8);
    assert!(text.lines().all(|l| l.contains("PASS")));
}
