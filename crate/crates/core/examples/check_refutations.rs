//! Replays both reference refutations and prints their derivation tables.
//!
//! Run with `cargo run --example check_refutations`.

use erue::checker::{builtin_scripts, check_builtin};

fn main() {
    for (name, _) in builtin_scripts() {
        let report = check_builtin(name).expect("bundled script");
        println!("== {name}");
        print!("{}", report.render_summary());
        print!("{}", report.render_table());
        println!();
    }
}
