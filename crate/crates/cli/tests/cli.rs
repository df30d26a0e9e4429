use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> String {
    let p: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn welded(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_welded"))
        .args(args)
        .env_remove("WELDED_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_exit_codes() {
    let ok = welded(&["check", &fixture("hopf.wg")]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("ok: wgraph"));
    let ok = welded(&["check", &fixture("clasp.gd")]);
    assert_eq!(code(&ok), 0);
    let bad = welded(&["check", &fixture("broken.wg")]);
    assert_eq!(code(&bad), 2);
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown name `b`"));
    assert_eq!(code(&welded(&["check", &fixture("missing.wg")])), 2);
}

#[test]
fn milnor_of_hopf() {
    let o = welded(&["milnor", &fixture("hopf.wg")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "mu(1; 2,2) = 1\n");
    assert_eq!(stdout(&welded(&["milnor", &fixture("trivial2.wg")])), "");
    assert_eq!(code(&welded(&["milnor", &fixture("loop.wg")])), 2);
}

#[test]
fn equiv_exit_codes() {
    let same = welded(&["equiv", &fixture("trivial2.wg"), &fixture("trivial2.wg")]);
    assert_eq!(code(&same), 0);
    let differ = welded(&["equiv", &fixture("hopf.wg"), &fixture("trivial2.wg")]);
    assert_eq!(code(&differ), 1);
    let forest = welded(&["equiv", &fixture("loop.wg"), &fixture("trivial2.wg")]);
    assert_eq!(code(&forest), 2);
}

#[test]
fn psi_xi_psi_round_trip() {
    let first = stdout(&welded(&["psi", &fixture("clasp.gd")]));
    let g1 = scratch("clasp1.wg", &first);
    let d = stdout(&welded(&["xi", &g1]));
    assert!(d.starts_with("gauss stringlink 2\n"));
    let d = scratch("clasp2.gd", &d);
    let second = stdout(&welded(&["psi", &d]));
    let g2 = scratch("clasp2.wg", &second);
    assert_eq!(code(&welded(&["equiv", &g1, &g2])), 0);
}

#[test]
fn xi_of_a_link_with_orientations() {
    let g = scratch("hopf_link.wg", &stdout(&welded(&["psi", &fixture("hopf_link.gd")])));
    let plain = welded(&["xi", &g]);
    assert_eq!(code(&plain), 0);
    assert!(stdout(&plain).starts_with("gauss link 2\n"));
    let flipped = welded(&["xi", &g, "--orient", "2:-"]);
    assert_eq!(code(&flipped), 0);
    assert_eq!(code(&welded(&["xi", &g, "--orient", "3:+"])), 2);
    assert_eq!(code(&welded(&["xi", &fixture("hopf.wg"), "--orient", "1:+"])), 2);
}

#[test]
fn printing_is_canonical() {
    let text = stdout(&welded(&["psi", &fixture("clasp.gd")]));
    let p = scratch("canon.wg", &text);
    let again = welded(&["apply", &p, "--move", "or 0", "--move", "or 0"]);
    assert_eq!(stdout(&again), text);
    let bad = welded(&["apply", &p, "--move", "contract 9"]);
    assert_eq!(code(&bad), 2);
    assert!(bad.stdout.is_empty());
}

#[test]
fn normal_form_keeps_invariants() {
    let o = welded(&["normal-form", &fixture("hopf.wg")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("w: ")));
    let graph: String = text.lines().filter(|l| !l.starts_with("w: ")).map(|l| format!("{l}\n")).collect();
    let unmarked = graph.lines().filter(|l| l.starts_with("v ") && !l.ends_with("marked")).count();
    assert_eq!(unmarked, 2);
    let nf = scratch("hopf_nf.wg", &graph);
    assert_eq!(stdout(&welded(&["milnor", &nf])), "mu(1; 2,2) = 1\n");
}

#[test]
fn wirtinger_text() {
    let o = welded(&["wirtinger", &fixture("hopf.wg")]);
    assert_eq!(stdout(&o), "gen i1 f1 i2 f2\nrel f1 = i1\nrel f2 = i2 ^ i1\n");
}

#[test]
fn fuzz_is_reproducible() {
    let a = welded(&["fuzz", "--seed", "4", "--cases", "10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&welded(&["fuzz", "--seed", "4", "--cases", "10"])));
    let env = Command::new(env!("CARGO_BIN_EXE_welded"))
        .args(["fuzz", "--seed", "1", "--cases", "3", "--suite", "upsilon"])
        .env("WELDED_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), "upsilon: 3 of 3 cases passed (seed 9)\n");
    assert_eq!(code(&welded(&["fuzz", "--cases", "3"])), 2);
}
