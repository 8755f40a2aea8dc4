//! First-order restricted saturation: the counterexample survives the clause
//! budget while its ground instance is refuted at once.
//!
//! Run with `cargo run --release --example first_order_contrast`.

use erue::prover::{fo_exhaustion_report, SearchLimits};
use erue::Problem;

fn main() {
    let limits = SearchLimits {
        max_generated: 10_000,
        ..SearchLimits::default()
    };
    for (name, problem) in [
        ("counterexample", Problem::counterexample()),
        ("ground instance", Problem::ground_instance()),
    ] {
        let report = fo_exhaustion_report(&problem, &limits).expect("limits are valid");
        println!("== {name}");
        print!("{report}");
        println!();
    }
}
