mod common;

use erue::calculus::Rule;
use erue::checker::{check_builtin, check_script, parse_script, print_step, Verdict, REF1, REF2};
use erue::Problem;

use common::{clause_mutants, replay_witnesses};

fn script_with(text: &str, step_ix: usize, expected: Vec<erue::syntax::ClauseExpr>) -> String {
    let mut s = parse_script(text).unwrap();
    s.steps[step_ix].expected = expected;
    erue::checker::print_script(&s)
}

#[test]
fn golden_tables_match_row_by_row() {
    let r = check_builtin("ref1").unwrap();
    let table = r.render_table();
    for row in [
        "FlexRig(C2):  C3: -(f(g(X)) = X) | -(X = f(H(X)))",
        "Solve(C3):    C4: -(f(g(X)) = f(H(X)))",
        "Res(C1, C5):  C6: -((g(f(a)) = a) = (g(X) = H(X)))",
        "FlexRig(C10): C11: -(a = H(f(a))) | -(H = (^Y:i. a))",
        "Triv(C12): []",
    ] {
        assert!(
            table.lines().any(|l| l == row),
            "missing row `{row}` in\n{table}"
        );
    }
    let r = check_builtin("ref2").unwrap();
    assert_eq!(r.render_table().lines().last(), Some("Triv(C23): []"));
}

#[test]
fn dec_star_needs_two_rounds() {
    let r = check_builtin("ref2").unwrap();
    let s = r.steps.iter().find(|s| s.results == ["C8"]).unwrap();
    assert!(s.starred && s.rule == Rule::Dec);
    match &s.status {
        erue::checker::StepStatus::Verified(w) => assert_eq!(w.iterations(), 2),
        other => panic!("{other:?}"),
    }
    // Without the star a single decomposition cannot reach C8.
    let text = REF2.replace("Dec*(C7)", "Dec(C7)");
    let r = check_script(&parse_script(&text).unwrap(), &Problem::counterexample()).unwrap();
    assert!(matches!(r.verdict, Verdict::Failed { ref ids, .. } if ids == &["C8"]));
}

#[test]
fn accepted_parameters_replay_through_the_kernel() {
    for name in ["ref1", "ref2"] {
        let r = check_builtin(name).unwrap();
        assert!(
            replay_witnesses(&r).is_empty(),
            "{name}: {:?}",
            replay_witnesses(&r)
        );
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["ref1", "ref2"] {
        let a = check_builtin(name).unwrap();
        let b = check_builtin(name).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render_table(), b.render_table());
        assert_eq!(a.render_machine(), b.render_machine());
    }
}

#[test]
fn every_mutant_is_rejected_at_its_step() {
    let problem = Problem::counterexample();
    let mut total = 0;
    for text in [REF1, REF2] {
        let script = parse_script(text).unwrap();
        for (k, step) in script.steps.iter().enumerate() {
            for (e, expected) in step.expected.iter().enumerate() {
                for m in clause_mutants(expected) {
                    let mut exp = step.expected.clone();
                    exp[e] = m;
                    let mutated = parse_script(&script_with(text, k, exp)).unwrap();
                    let r = check_script(&mutated, &problem).unwrap();
                    total += 1;
                    assert_eq!(
                        r.verdict,
                        Verdict::Failed {
                            line: mutated.steps[k].line,
                            ids: step.results.clone()
                        },
                        "mutant accepted or rejected elsewhere: {}",
                        print_step(&mutated.steps[k])
                    );
                }
            }
        }
    }
    assert!(total > 100, "only {total} mutants");
}

#[test]
fn failure_reports_nearest_clause() {
    let text = REF1.replace("expect -(g(X) = H(X))", "expect -(g(X) = H(a))");
    let r = check_script(&parse_script(&text).unwrap(), &Problem::counterexample()).unwrap();
    let summary = r.render_summary();
    assert!(summary.contains("FAILED at line 6 (C5)"), "{summary}");
    assert!(
        summary.contains("nearest computed clause: -(g(X) = H(X))"),
        "{summary}"
    );
}

#[test]
fn unknown_premise_and_reused_id_fail() {
    let p = Problem::counterexample();
    let s = parse_script("problem \"counterexample.erp\"\nstep C3 = Dec(C9) expect empty").unwrap();
    let r = check_script(&s, &p).unwrap();
    assert!(r.render_summary().contains("unknown premise `C9`"));
    let s = parse_script("problem \"counterexample.erp\"\nstep C1 = Dec(C2) expect empty").unwrap();
    let r = check_script(&s, &p).unwrap();
    assert!(matches!(r.verdict, Verdict::Failed { .. }));
}

#[test]
fn pinned_positions_restrict_the_search() {
    let p = Problem::counterexample();
    let ok =
        "problem \"x\"\nstep C3 = Res(C1, C2; at 1, 1) expect -((g(f(a)) = a) = (f(g(X)) = X))";
    assert_eq!(
        check_script(&parse_script(ok).unwrap(), &p)
            .unwrap()
            .verdict,
        Verdict::NoGoal
    );
    let bad =
        "problem \"x\"\nstep C3 = Res(C1, C2; at 1, 2) expect -((g(f(a)) = a) = (f(g(X)) = X))";
    assert!(matches!(
        check_script(&parse_script(bad).unwrap(), &p)
            .unwrap()
            .verdict,
        Verdict::Failed { .. }
    ));
}

#[test]
fn flexrig_without_binding_enumerates() {
    // The imitation f(H(X)) is found by enumeration when no binding is given.
    let r = check_builtin("ref1").unwrap();
    assert!(r.is_success());
    let text = REF1.replace("FlexRig(C10; bind H := ^Y:i. a)", "FlexRig(C10)");
    let r = check_script(&parse_script(&text).unwrap(), &Problem::counterexample()).unwrap();
    assert_eq!(r.verdict, Verdict::Refuted);
}
