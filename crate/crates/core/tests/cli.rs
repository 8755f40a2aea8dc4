use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use erue::checker::parse_script;
use erue::dot::DerivationGraph;

fn erue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_erue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("erue-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    let o = erue(&["check", "--builtin", "ref1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: refuted (11 steps verified"));
    let o = erue(&["check", "--builtin", "ref2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("Triv(C23): []"));
    assert_eq!(erue(&["check", "missing.ers"]).status.code(), Some(3));
    assert_eq!(erue(&["check", &data("ref1.ers")]).status.code(), Some(0));
}

#[test]
fn check_no_goal_and_failure() {
    let partial = scratch("partial.ers");
    std::fs::write(&partial, "problem \"counterexample.erp\"\nstep C3 = Res(C1, C2) expect -((g(f(a)) = a) = (f(g(X)) = X))\n").unwrap();
    assert_eq!(
        erue(&["check", partial.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let wrong = scratch("wrong.ers");
    std::fs::write(&wrong, "problem \"counterexample.erp\"\nstep C3 = Res(C1, C2) expect +((g(f(a)) = a) = (f(g(X)) = X))\n").unwrap();
    let o = erue(&["check", wrong.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "C3 Res failed\n");
    let ill = scratch("ill.ers");
    std::fs::write(
        &ill,
        "problem \"counterexample.erp\"\nstep C3 = Dec(C2) expect -(b = a)\n",
    )
    .unwrap();
    assert_eq!(
        erue(&["check", ill.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn prove_writes_a_checkable_script() {
    let out = scratch("hinted.ers");
    let o = erue(&[
        "prove",
        &data("counterexample.erp"),
        "--hints",
        &data("ref1.hints"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    parse_script(&text).unwrap();
    assert_eq!(
        erue(&["check", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn prove_first_order_exhausts() {
    let out = scratch("fo.ers");
    let o = erue(&[
        "prove",
        &data("counterexample.erp"),
        "--fo",
        "--max-clauses",
        "10000",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(
        s.contains("outcome: limit exhausted (generated clauses)"),
        "{s}"
    );
    assert!(s.contains("head clashes: "), "{s}");
    assert!(!out.exists());
}

#[test]
fn prove_prop_pair_in_two_steps() {
    let out = scratch("pp.ers");
    let o = erue(&["prove", &data("prop_pair.erp"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("proof steps: 2"));
    assert_eq!(
        erue(&["check", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn prove_rejects_bad_input() {
    assert_eq!(erue(&["prove", "nowhere.erp"]).status.code(), Some(3));
    let bad = scratch("bad.erp");
    std::fs::write(&bad, "clause C1 : +(q).").unwrap();
    assert_eq!(
        erue(&["prove", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(
        erue(&["prove", &data("prop_pair.erp"), "--max-clauses", "0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        erue(&["prove", &data("prop_pair.erp"), "--time", "0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn export_dot_round_trips() {
    let out = scratch("ref2.dot");
    let o = erue(&[
        "export-dot",
        "--builtin",
        "ref2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = DerivationGraph::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.nodes.len(), 24);
    let o = erue(&["export-dot", "--builtin", "ref1"]);
    let g = DerivationGraph::parse(&stdout(&o)).unwrap();
    assert_eq!(g.nodes.len(), 13);
}

#[test]
fn export_dot_refuses_failing_scripts() {
    let wrong = scratch("wrong-dot.ers");
    std::fs::write(&wrong, "problem \"counterexample.erp\"\nstep C3 = Res(C1, C2) expect +((g(f(a)) = a) = (f(g(X)) = X))\n").unwrap();
    let out = scratch("never.dot");
    let o = erue(&[
        "export-dot",
        wrong.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn show_normalizes_files() {
    for f in ["counterexample.erp", "ref2.ers", "ref1.hints"] {
        let o = erue(&["show", &data(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        let copy = scratch(&format!("shown-{f}"));
        std::fs::write(&copy, stdout(&o)).unwrap();
        let again = erue(&["show", copy.to_str().unwrap()]);
        assert_eq!(stdout(&again), stdout(&o), "{f}");
    }
    assert_eq!(
        erue(&["show", &data("ref1.ers").replace(".ers", ".txt")])
            .status
            .code(),
        Some(3)
    );
}
