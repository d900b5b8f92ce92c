use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use riccati_lie::cli::SolutionTable;
use tempfile::TempDir;

const CANONICAL: &str = "\
[potential]
a0 = poly 0
a1 = poly 0
a2 = poly 1

[run]
t0 = 0
t1 = 1
step = 0.05
tol = 1e-10

[ics]
ic = 0 -0.25
";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_riccati-lie"));
    cmd.env_remove("RICCATI_LIE_SEED");
    cmd
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn table(out: &Output) -> SolutionTable {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    SolutionTable::read(out.stdout.as_slice()).unwrap()
}

#[test]
fn simulate_canonical_reaches_analytic_endpoint() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let t = table(&run(&["simulate", s(&cfg)]));
    assert_eq!(t.header, ["t", "x", "p"]);
    let last = t.rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!(
        (last[1] - 1.0).abs() < 1e-6 && (last[2] + 1.0).abs() < 1e-6,
        "{last:?}"
    );
}

#[test]
fn simulate_zero_potential_moves_at_unit_speed() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "z.ini",
        &CANONICAL.replace("a2 = poly 1", "a2 = poly 0"),
    );
    let t = table(&run(&["simulate", s(&cfg), "--ic", "0,-1"]));
    for row in &t.rows {
        assert!((row[1] - row[0]).abs() < 1e-10);
    }
}

#[test]
fn simulate_riccati2_writes_velocity_columns() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    // x = 2t/(1+t^2) has x(0) = 0, x'(0) = 2
    let t = table(&run(&[
        "simulate",
        s(&cfg),
        "--system",
        "riccati2",
        "--ic",
        "0 2",
    ]));
    assert_eq!(t.header, ["t", "x", "v"]);
    let last = t.rows.last().unwrap();
    assert!(
        (last[1] - 1.0).abs() < 1e-6 && last[2].abs() < 1e-6,
        "{last:?}"
    );
}

#[test]
fn simulate_writes_to_out_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let out = dir.path().join("sol.csv");
    let res = run(&["simulate", s(&cfg), "--out", s(&out)]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let t = SolutionTable::read(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 21);
}

#[test]
fn positive_momentum_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let res = run(&["simulate", s(&cfg), "--ic", "0,1"]);
    assert_eq!(res.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&res.stderr).contains("domain"));
}

#[test]
fn malformed_configs_are_config_errors() {
    let dir = TempDir::new().unwrap();
    let bad_fn = write(&dir, "a.ini", &CANONICAL.replace("poly 1", "poly one"));
    let bad_run = write(&dir, "b.ini", &CANONICAL.replace("t1 = 1", "t1 = 0"));
    for cfg in [&bad_fn, &bad_run] {
        assert_eq!(run(&["simulate", s(cfg)]).status.code(), Some(2));
    }
    let missing = dir.path().join("missing.ini");
    assert_eq!(run(&["derive", s(&missing)]).status.code(), Some(2));
    assert_eq!(run(&["simulate"]).status.code(), Some(2));
}

#[test]
fn derive_potential_reports_coefficients() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let out = run(&["derive", s(&cfg)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('t') && !l.contains('='))
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 21);
    for row in rows {
        assert_eq!(&row[1..], [0.0, 0.0, 0.0, 1.0, 0.0, 3.0]);
    }
    assert!(text.contains("f1_constraint_residual=0.0000000000000000e0"));
    assert!(text.contains("f0_constraint_residual=0.0000000000000000e0"));
}

#[test]
fn derive_riccati_reports_potential_and_defect() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "r.ini",
        "[riccati]\nc0 = poly 0\nc1 = poly 0\nc2 = poly 0\nc3 = poly 1\n",
    );
    let out = run(&["derive", s(&cfg)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t,a0,a1,a2"));
    for line in text
        .lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
    {
        let a: Vec<f64> = line
            .split(',')
            .skip(1)
            .map(|c| c.parse().unwrap())
            .collect();
        assert!(a[0].abs() < 1e-15 && a[1].abs() < 1e-15 && (a[2] - 1.0).abs() < 1e-15);
    }
    assert!(text.contains("c0_defect=0.0000000000000000e0"));

    let neg = write(
        &dir,
        "n.ini",
        "[riccati]\nc0 = poly 0\nc1 = poly 0\nc2 = poly 0\nc3 = poly -1\n",
    );
    assert_eq!(run(&["derive", s(&neg)]).status.code(), Some(3));
}

fn three_solutions(dir: &TempDir, ics: [&str; 3]) -> (PathBuf, PathBuf) {
    let text = format!("{CANONICAL}ic2 = {}\nic3 = {}\n", ics[1], ics[2])
        .replace("ic = 0 -0.25", &format!("ic = {}", ics[0]));
    let cfg = write(dir, "three.ini", &text);
    let sols = dir.path().join("sols.csv");
    assert!(
        run(&["simulate", s(&cfg), "--out", s(&sols)])
            .status
            .success()
    );
    (cfg, sols)
}

#[test]
fn superpose_from_fourth_ic_matches_direct_simulation() {
    let dir = TempDir::new().unwrap();
    let (cfg, sols) = three_solutions(&dir, ["0 -0.25", "0.5 -1", "-0.3 -2"]);
    let rebuilt_path = dir.path().join("rebuilt.csv");
    let upsilon = dir.path().join("upsilon.csv");
    let res = run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--fourth-ic",
        "0.2,-0.6",
        "--out",
        s(&rebuilt_path),
        "--upsilon",
        s(&upsilon),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let rebuilt = SolutionTable::read(std::fs::File::open(&rebuilt_path).unwrap()).unwrap();
    assert_eq!(rebuilt.header, ["t", "x0", "p0"]);
    let direct = table(&run(&["simulate", s(&cfg), "--ic", "0.2,-0.6"]));
    for (r, d) in rebuilt.rows.iter().zip(&direct.rows) {
        assert_eq!(r[0], d[0]);
        assert!(
            (r[1] - d[1]).abs() < 1e-5 && (r[2] - d[2]).abs() < 1e-5,
            "{r:?} vs {d:?}"
        );
    }
    let view = SolutionTable::read(std::fs::File::open(&upsilon).unwrap()).unwrap();
    assert_eq!(view.header, ["t", "x0"]);
    for (v, r) in view.rows.iter().zip(&rebuilt.rows) {
        assert_eq!(v[..], r[..2]);
    }
}

#[test]
fn superpose_with_zero_constants_returns_first_solution() {
    let dir = TempDir::new().unwrap();
    let (cfg, sols) = three_solutions(&dir, ["0 -0.25", "0.5 -1", "-0.3 -2"]);
    let rebuilt = table(&run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--k1",
        "0",
        "--k2",
        "0",
    ]));
    let input = SolutionTable::read(std::fs::File::open(&sols).unwrap()).unwrap();
    for (r, i) in rebuilt.rows.iter().zip(&input.rows) {
        assert_eq!(r[..], i[..3]);
    }
    // negative constants parse as values, not flags
    let res = run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--k1",
        "-1e-3",
        "--k2",
        "0",
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
}

#[test]
fn superpose_rejects_coincident_solutions() {
    let dir = TempDir::new().unwrap();
    let (cfg, sols) = three_solutions(&dir, ["0 -0.25", "0 -0.25", "-0.3 -2"]);
    let res = run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--fourth-ic",
        "0.2,-0.6",
    ]);
    assert_eq!(res.status.code(), Some(4));
    let res = run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--k1",
        "1",
        "--k2",
        "1",
    ]);
    assert_eq!(res.status.code(), Some(4));
}

#[test]
fn superpose_rejects_wrong_table_shape() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let sols = dir.path().join("one.csv");
    assert!(
        run(&["simulate", s(&cfg), "--out", s(&sols)])
            .status
            .success()
    );
    let res = run(&[
        "superpose",
        s(&cfg),
        "--sols",
        s(&sols),
        "--k1",
        "0",
        "--k2",
        "0",
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_report_lines() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let out = run(&["verify", "brackets", "--trials", "100"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    assert!(text.contains("brackets.table"));

    let out = run(&["verify", "integrals", s(&cfg), "--trials", "4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn seed_environment_variable_is_honoured() {
    let a = bin()
        .args(["verify", "action", "--trials", "20"])
        .env("RICCATI_LIE_SEED", "42")
        .output()
        .unwrap();
    let b = bin()
        .args(["verify", "action", "--trials", "20"])
        .env("RICCATI_LIE_SEED", "42")
        .output()
        .unwrap();
    let c = bin()
        .args(["verify", "action", "--trials", "20"])
        .env("RICCATI_LIE_SEED", "43")
        .output()
        .unwrap();
    assert!(a.status.success() && c.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let bad = bin()
        .args(["verify", "action"])
        .env("RICCATI_LIE_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn simulated_csv_survives_a_roundtrip_bit_for_bit() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let out = run(&["simulate", s(&cfg)]);
    let first = table(&out);
    let again = SolutionTable::from_csv_str(&first.to_csv_string().unwrap()).unwrap();
    assert_eq!(first, again);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        again.to_csv_string().unwrap()
    );
}

#[test]
fn initial_conditions_may_start_with_a_minus_sign() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.ini", CANONICAL);
    let t = table(&run(&["simulate", s(&cfg), "--ic", "-0.2 -0.5"]));
    assert_eq!(t.rows[0][1..], [-0.2, -0.5]);
}
