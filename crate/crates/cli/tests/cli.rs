use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_firefighter"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)).unwrap()
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

#[test]
fn simulate_single_walls_writes_the_golden_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.trace");
    let svg = dir.path().join("f.svg");
    let ascii = dir.path().join("f.txt");
    let (code, _, err) = run(bin()
        .arg("simulate")
        .arg(config("single-walls.toml"))
        .arg("--out")
        .arg(&out)
        .arg("--svg")
        .arg(&svg)
        .arg("--ascii")
        .arg(&ascii));
    assert_eq!(code, 0, "{err}");
    let trace = fs::read_to_string(&out).unwrap();
    assert_eq!(trace, golden("single_walls.trace"));
    assert!(trace.ends_with("outcome=Contained 4 20\n"));
    let text = fs::read_to_string(&ascii).unwrap();
    assert_eq!(text.matches('p').count(), 16);
    assert_eq!(text.matches('b').count(), 19);
    let svg = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches(r#"class="cell""#).count(), 16 + 19);
}

#[test]
fn simulate_is_deterministic_and_honours_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.toml");
    fs::write(&p, "strategy = \"random\"\nadversary = \"periodic:2\"\nhorizon = 6\n").unwrap();
    let once = run(bin().arg("simulate").arg(&p).arg("--seed").arg("9"));
    let twice = run(bin().arg("simulate").arg(&p).arg("--seed").arg("9"));
    let other = run(bin().arg("simulate").arg(&p).arg("--seed").arg("10"));
    assert_eq!(once.0, 0, "{}", once.2);
    assert_eq!(once.1, twice.1);
    assert_ne!(once.1, other.1);
    let (code, _, err) = run(bin().arg("simulate").arg(config("restart.toml")));
    assert_eq!(code, 0, "{err}");
    let (_, short, _) = run(bin().arg("simulate").arg(config("thm1-wall.toml")).arg("--horizon").arg("2"));
    // thm1 declares its zero tail only at turn 5
    assert!(short.ends_with("outcome=Undecided 2\n"), "{short}");
}

#[test]
fn bad_config_lists_every_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    fs::write(&p, "strategy = \"greedy\"\nadversary = \"thm1\"\nhorizon = 0\n").unwrap();
    let (code, _, err) = run(bin().arg("simulate").arg(&p));
    assert_ne!(code, 0);
    assert!(err.contains("greedy") && err.contains("restart16"), "{err}");
    assert!(err.contains("horizon"), "{err}");
}

#[test]
fn duel_prints_a_six_row_table() {
    let (code, out, err) = run(bin().args([
        "duel", "-s", "wall", "-s", "restart16", "-s", "idle", "-a", "thm1", "-a", "fixed:1,1,1,13",
    ]));
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("strategy"));
    for l in &lines[1..] {
        if l.starts_with("idle") || l.contains("thm1") {
            assert!(l.contains("Escaped"), "{l}");
        }
    }
    assert!(lines.iter().any(|l| l.starts_with("wall") && l.contains("Contained  4")));
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.trace");
    run(bin().arg("simulate").arg(config("thm1-wall.toml")).arg("--out").arg(&t));
    let (code, out, _) = run(bin().arg("certify").arg(&t));
    assert_eq!(code, 1);
    assert!(out.starts_with("refuted: Escaped") && out.contains("witness="), "{out}");

    let g = dir.path().join("g.trace");
    fs::write(&g, golden("surplus_walls.trace")).unwrap();
    let (code, out, _) = run(bin().arg("certify").arg(&g));
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "verified: Contained 7 49");

    let p = dir.path().join("p.toml");
    fs::write(&p, "strategy = \"idle\"\nadversary = \"periodic:1\"\nhorizon = 3\n").unwrap();
    let pt = dir.path().join("p.trace");
    run(bin().arg("simulate").arg(&p).arg("--out").arg(&pt));
    let (code, out, _) = run(bin().arg("certify").arg(&pt));
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("min_barrier=16"));

    let garbage = dir.path().join("x.trace");
    fs::write(&garbage, "not a trace\n").unwrap();
    let (code, _, err) = run(bin().arg("certify").arg(&garbage));
    assert_eq!(code, 3, "{err}");
}

#[test]
fn render_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.trace");
    fs::write(&g, golden("surplus_walls.trace")).unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    run(bin().arg("render").arg(&g).arg("--svg").arg(&a));
    run(bin().arg("render").arg(&g).arg("--svg").arg(&b));
    let svg = fs::read(&a).unwrap();
    assert_eq!(svg, fs::read(&b).unwrap());
    let text = String::from_utf8(svg).unwrap();
    assert_eq!(text.matches(PROTECTED).count(), 24 + 1);
    let (code, ascii, _) = run(bin().arg("render").arg(&g));
    assert_eq!(code, 0);
    assert_eq!(ascii.matches('p').count(), 24);
}

const PROTECTED: &str = "#4caf50";

#[test]
fn search_reports_the_universe() {
    let (code, out, _) = run(bin().args(["search", "-a", "thm1", "--radius", "6", "--horizon", "5"]));
    assert_eq!(code, 0);
    assert!(out.starts_with("CannotContain"), "{out}");
    assert!(out.contains("radius 6 (84 cells)"));
    let (code, out, _) = run(bin().args(["search", "-a", "fixed:4", "--radius", "2", "--horizon", "2"]));
    assert_eq!(code, 0);
    assert!(out.starts_with("CanContain"), "{out}");
    let (code, _, _) = run(bin().args(["search", "-a", "periodic:3", "--radius", "4", "--horizon", "3", "--max-moves", "10"]));
    assert_eq!(code, 2);
}
