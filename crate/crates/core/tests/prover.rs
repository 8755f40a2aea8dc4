mod common;

use erue::checker::{check_script, Verdict};
use erue::prover::{
    fo_exhaustion_report, parse_hints, prove, Limit, ModeConfig, Outcome, SearchLimits,
};
use erue::Problem;

use common::fo_level_oracle;

fn clauses(p: &Problem) -> Vec<erue::Clause> {
    p.clauses.iter().map(|(_, c)| c.clone()).collect()
}

fn limits(n: usize) -> SearchLimits {
    SearchLimits {
        max_generated: n,
        ..SearchLimits::default()
    }
}

#[test]
fn ground_instance_oracle_agrees_with_prover() {
    let p = Problem::ground_instance();
    // No derivation of depth below 3 reaches [], so 3 steps are optimal.
    let (level, _) = fo_level_oracle(&clauses(&p), 4, 40);
    assert_eq!(level, Some(3));
    let r = fo_exhaustion_report(&p, &limits(10_000)).unwrap();
    assert_eq!(r.outcome, Outcome::Refuted);
    assert_eq!(r.proof_len(), Some(3));
}

#[test]
fn counterexample_has_no_shallow_first_order_refutation() {
    let p = Problem::counterexample();
    let (level, seen) = fo_level_oracle(&clauses(&p), 3, 40);
    assert_eq!(level, None, "{seen} clauses");
}

#[test]
fn first_order_mode_exhausts_on_counterexample() {
    let r = fo_exhaustion_report(&Problem::counterexample(), &limits(10_000)).unwrap();
    assert_eq!(r.outcome, Outcome::Exhausted(Limit::Generated));
    assert!(r.script.is_none());
    assert_eq!(r.stats.generated, 10_000);
    assert!(r.stats.head_clashes > 0);
    assert!(r.stats.occurs_failures > 0);
}

#[test]
fn hinted_search_refutes_and_script_verifies() {
    let p = Problem::counterexample();
    let hints = parse_hints(include_str!("../data/ref1.hints")).unwrap();
    let r = prove(&p, &ModeConfig::with_hints(hints), &SearchLimits::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Refuted);
    assert!(r.stats.generated <= 100_000);
    let script = r.script_for("counterexample.erp").unwrap();
    let text = erue::checker::print_script(&script);
    assert!(text.contains("bind X := f(H1:(i > i)(X))"), "{text}");
    assert_eq!(check_script(&script, &p).unwrap().verdict, Verdict::Refuted);
}

#[test]
fn unhinted_search_refutes_too() {
    let p = Problem::counterexample();
    for free_var_args in [false, true] {
        let cfg = ModeConfig {
            free_var_args,
            ..ModeConfig::higher_order()
        };
        let r = prove(&p, &cfg, &SearchLimits::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Refuted);
        let script = r.script_for("counterexample.erp").unwrap();
        assert_eq!(check_script(&script, &p).unwrap().verdict, Verdict::Refuted);
    }
}

#[test]
fn emitted_scripts_survive_text_round_trip() {
    let p = Problem::counterexample();
    let hints = parse_hints("bind X := f(H(X))").unwrap();
    let r = prove(&p, &ModeConfig::with_hints(hints), &SearchLimits::default()).unwrap();
    let text = erue::checker::print_script(&r.script_for("counterexample.erp").unwrap());
    let reparsed = erue::checker::parse_script(&text).unwrap();
    assert_eq!(
        check_script(&reparsed, &p).unwrap().verdict,
        Verdict::Refuted
    );
}

#[test]
fn prover_is_deterministic() {
    let p = Problem::counterexample();
    let hints = parse_hints("bind X := f(H(X))").unwrap();
    for cfg in [ModeConfig::with_hints(hints), ModeConfig::first_order()] {
        let a = prove(&p, &cfg, &limits(5_000)).unwrap();
        let b = prove(&p, &cfg, &limits(5_000)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }
}

#[test]
fn larger_limits_keep_refutations() {
    let p = Problem::counterexample();
    let hints = parse_hints("bind X := f(H(X))").unwrap();
    let cfg = ModeConfig::with_hints(hints);
    let small = prove(&p, &cfg, &limits(1_000)).unwrap();
    assert!(small.outcome.is_refutation());
    for n in [2_000, 20_000] {
        assert!(prove(&p, &cfg, &limits(n)).unwrap().outcome.is_refutation());
    }
    let heavier = SearchLimits {
        max_weight: 60,
        max_depth: 128,
        ..limits(1_000)
    };
    assert!(prove(&p, &cfg, &heavier).unwrap().outcome.is_refutation());
}

#[test]
fn tiny_limits_exhaust() {
    let r = prove(
        &Problem::counterexample(),
        &ModeConfig::higher_order(),
        &limits(3),
    )
    .unwrap();
    assert_eq!(r.outcome, Outcome::Exhausted(Limit::Generated));
}

#[test]
fn saturation_is_reported() {
    // Nothing resolves and nothing decomposes.
    let p = Problem::parse("const a : i.\nconst b : i.\nclause C1 : +(a = b).").unwrap();
    let r = prove(&p, &ModeConfig::higher_order(), &SearchLimits::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Saturated);
}

#[test]
fn input_empty_clause_is_immediate() {
    let p = Problem::parse("clause C1 : empty.").unwrap();
    let r = prove(&p, &ModeConfig::higher_order(), &SearchLimits::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Refuted);
    assert_eq!(r.proof_len(), Some(0));
}
