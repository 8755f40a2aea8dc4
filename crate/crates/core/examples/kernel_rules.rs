//! Applies each kernel rule once to a small clause and prints the result.
//!
//! Run with `cargo run --example kernel_rules`.

use erue::calculus::{self, BindingOptions};
use erue::syntax::parse_clause_standalone;
use erue::{Clause, Signature, SimpleType};

fn clause(text: &str, sig: &Signature) -> Clause {
    parse_clause_standalone(text, sig).expect("example clause parses")
}

fn main() {
    let mut sig = Signature::counterexample();
    sig.declare("p", SimpleType::Prop).expect("fresh name");
    sig.declare("q", SimpleType::Prop).expect("fresh name");

    let c1 = clause("+(g(f(a)) = a)", &sig);
    let c2 = clause("-(f(g(X)) = X)", &sig);
    println!("Res     {}", calculus::resolve(&c1, 0, &c2, 0).unwrap());

    let c = clause("-(g(f(a)) = g(X))", &sig);
    println!("Dec     {}", calculus::decompose(&c, 0).unwrap());

    let c = clause("-(f(a) = X) | -(a = H(X))", &sig);
    println!("Solve   {}", calculus::solve_subst(&c, 0, false).unwrap());
    println!(
        "Solve   {} (keep)",
        calculus::solve_subst(&c, 0, true).unwrap()
    );

    let c = clause("-(f(g(X)) = X) | -(X = f(H(X)))", &sig);
    println!(
        "Solve   {} (chain)",
        calculus::solve_chain(&c, 0, 1).unwrap()
    );

    let c = clause("-(a = a) | +(p)", &sig);
    println!("Triv    {}", calculus::trivial(&c, 0).unwrap());

    let c = clause("-(a = H(f(a)))", &sig);
    for b in calculus::enumerate_bindings(&c, 0, &BindingOptions::default()).unwrap() {
        println!(
            "FlexRig {}   with {b}",
            calculus::flex_rigid(&c, 0, &b).unwrap()
        );
    }

    let c = clause("+(p) | +(q)", &sig);
    println!("Fac     {}", calculus::factor(&c, 0, 1).unwrap());

    let c = clause("-(p = q)", &sig);
    let e = calculus::equiv(&c, 0).unwrap();
    println!("Equiv   {e}");
    for r in calculus::cnf_all(&e) {
        println!("Cnf     {r}");
    }
}
