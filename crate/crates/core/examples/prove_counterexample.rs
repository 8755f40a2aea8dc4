//! Searches for refutations of the counterexample clause set, with and
//! without the binding hint, and replays the emitted scripts.
//!
//! Run with `cargo run --release --example prove_counterexample`.

use erue::checker::{check_script, print_script};
use erue::prover::{parse_hints, prove, ModeConfig, SearchLimits};
use erue::Problem;

fn main() {
    let problem = Problem::counterexample();
    let hints = parse_hints("bind X := f(H(X))").expect("hint parses");
    let runs = [
        ("with hint X := f(H(X))", ModeConfig::with_hints(hints)),
        ("without hints", ModeConfig::higher_order()),
    ];
    for (label, config) in runs {
        let report = prove(&problem, &config, &SearchLimits::default()).expect("limits are valid");
        println!("== {label}");
        print!("{report}");
        if let Some(script) = report.script_for("counterexample.erp") {
            print!("{}", print_script(&script));
            let replay = check_script(&script, &problem).expect("script elaborates");
            println!("replay: {:?}", replay.verdict);
        }
        println!();
    }
}
