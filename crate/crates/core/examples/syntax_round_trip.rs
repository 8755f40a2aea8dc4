//! Parses terms and clauses, shows inferred types, and prints them back.
//!
//! Run with `cargo run --example syntax_round_trip`.

use erue::syntax::{parse_clause_standalone, parse_term};
use erue::Problem;

fn main() {
    let problem = Problem::counterexample();
    let sig = &problem.signature;
    for text in [
        "f(g(X))",
        "^Y:i. f(Y)",
        "(^Y:i. g(Y))(a)",
        "H(f(a)) = a",
        "~(a = a) & (X = a)",
    ] {
        let t = parse_term(text, sig).expect("term parses");
        let ty = t.type_of().expect("well typed");
        println!("{text:<22} => {t} : {ty}");
    }
    let c =
        parse_clause_standalone("-(a = H(f(a))) | -(H = (^Y:i. a))", sig).expect("clause parses");
    for v in c.free_vars() {
        println!("{} : {}", v.name, v.ty);
    }
    println!("{}", problem.to_text());
}
