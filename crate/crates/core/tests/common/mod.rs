#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use erue::calculus::{self, BindingOptions, Rule, SolveMode};
use erue::checker::{CheckReport, StepStatus};
use erue::clause::clause_variant_equal;
use erue::syntax::{parse_clause_standalone, ClauseExpr, Expr, LitExpr};
use erue::{Clause, Polarity, Signature, SimpleType, Term};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every single-site mutation of `c`: one polarity flip, or one `a` turned
/// into `f(a)`, or one `f(a)` turned into `a`.
pub fn clause_mutants(c: &ClauseExpr) -> Vec<ClauseExpr> {
    let mut out = Vec::new();
    for (k, lit) in c.literals.iter().enumerate() {
        let mut flipped = c.clone();
        flipped.literals[k].polarity = lit.polarity.flip();
        out.push(flipped);
        for f in expr_mutants(&lit.formula) {
            let mut m = c.clone();
            m.literals[k] = LitExpr {
                polarity: lit.polarity,
                formula: f,
            };
            out.push(m);
        }
    }
    out
}

fn is_name(e: &Expr, n: &str) -> bool {
    matches!(e, Expr::Name { name, ann: None } if name == n)
}

fn f_of_a() -> Expr {
    Expr::App(Box::new(Expr::name("f")), vec![Expr::name("a")])
}

pub fn expr_mutants(e: &Expr) -> Vec<Expr> {
    let mut out = Vec::new();
    if is_name(e, "a") {
        out.push(f_of_a());
    }
    if let Expr::App(h, args) = e {
        if is_name(h, "f") && args.len() == 1 && is_name(&args[0], "a") {
            out.push(Expr::name("a"));
        }
    }
    let boxed2 =
        |a: &Expr, b: &Expr, mk: &dyn Fn(Box<Expr>, Box<Expr>) -> Expr, out: &mut Vec<Expr>| {
            for m in expr_mutants(a) {
                out.push(mk(Box::new(m), Box::new(b.clone())));
            }
            for m in expr_mutants(b) {
                out.push(mk(Box::new(a.clone()), Box::new(m)));
            }
        };
    match e {
        Expr::Name { .. } | Expr::Op(_) => {}
        Expr::App(h, args) => {
            for m in expr_mutants(h) {
                out.push(Expr::App(Box::new(m), args.clone()));
            }
            for (k, a) in args.iter().enumerate() {
                for m in expr_mutants(a) {
                    let mut args = args.clone();
                    args[k] = m;
                    out.push(Expr::App(h.clone(), args));
                }
            }
        }
        Expr::Lam { name, ty, body } => {
            for m in expr_mutants(body) {
                out.push(Expr::Lam {
                    name: name.clone(),
                    ty: ty.clone(),
                    body: Box::new(m),
                });
            }
        }
        Expr::Eq(a, b) => boxed2(a, b, &Expr::Eq, &mut out),
        Expr::And(a, b) => boxed2(a, b, &Expr::And, &mut out),
        Expr::Or(a, b) => boxed2(a, b, &Expr::Or, &mut out),
        Expr::Not(a) => {
            for m in expr_mutants(a) {
                out.push(Expr::Not(Box::new(m)));
            }
        }
    }
    out
}

/// All clauses of a report by id.
pub fn report_clauses(r: &CheckReport) -> HashMap<String, Clause> {
    let mut m: HashMap<String, Clause> = r.inputs.iter().cloned().collect();
    for s in &r.steps {
        for (id, c) in s.results.iter().zip(&s.clauses) {
            m.insert(id.clone(), c.clone());
        }
    }
    m
}

/// Re-runs every verified step through the kernel with the reported
/// parameters and returns the ids whose replay does not reproduce the
/// expected clauses.
pub fn replay_witnesses(r: &CheckReport) -> Vec<String> {
    let clauses = report_clauses(r);
    let mut bad = Vec::new();
    for s in &r.steps {
        let StepStatus::Verified(w) = &s.status else {
            continue;
        };
        let prem: Vec<&Clause> = s.premises.iter().map(|p| &clauses[p]).collect();
        let produced: Option<Vec<Clause>> = match s.rule {
            Rule::Cnf => Some(calculus::cnf_all(prem[0])),
            Rule::Res => {
                let p = &w.positions[0];
                calculus::resolve(prem[0], p[0], prem[1], p[1])
                    .ok()
                    .map(|c| vec![c])
            }
            _ => {
                let mut cur = prem[0].clone();
                let mut ok = true;
                for (k, p) in w.positions.iter().enumerate() {
                    let next = match s.rule {
                        Rule::Dec => calculus::decompose(&cur, p[0]),
                        Rule::Triv => calculus::trivial(&cur, p[0]),
                        Rule::Equiv => calculus::equiv(&cur, p[0]),
                        Rule::Fac => calculus::factor(&cur, p[0], p[1]),
                        Rule::FlexRig => {
                            calculus::flex_rigid(&cur, p[0], w.binding.as_ref().unwrap())
                        }
                        Rule::Solve => match w.modes[k] {
                            SolveMode::Drop => calculus::solve_subst(&cur, p[0], false),
                            SolveMode::Keep => calculus::solve_subst(&cur, p[0], true),
                            SolveMode::Chain => calculus::solve_chain(&cur, p[0], p[1]),
                        },
                        Rule::Res | Rule::Cnf => unreachable!(),
                    };
                    match next {
                        Ok(c) => cur = c,
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                ok.then(|| vec![cur])
            }
        };
        let good = produced.is_some_and(|ps| {
            ps.len() == s.clauses.len()
                && s.clauses
                    .iter()
                    .all(|e| ps.iter().any(|p| clause_variant_equal(p, e)))
        });
        if !good {
            bad.push(s.results.join(","));
        }
    }
    bad
}

/// Unary first-order-restricted inferences on `c`.
fn fo_unary(c: &Clause) -> Vec<Clause> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        out.extend(calculus::decompose(c, i).ok());
        out.extend(calculus::trivial(c, i).ok());
        out.extend(calculus::solve_subst(c, i, false).ok());
        out.extend(calculus::solve_subst(c, i, true).ok());
        for j in 0..c.len() {
            out.extend(calculus::factor(c, i, j).ok());
        }
    }
    out
}

fn fo_binary(c: &Clause, d: &Clause) -> Vec<Clause> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in 0..d.len() {
            out.extend(calculus::resolve(c, i, d, j).ok());
        }
    }
    out
}

/// Level saturation with first-order rules: level k holds every clause
/// derivable by a derivation of depth k. Returns the first level that
/// contains `[]`, searching up to `max_level`, and the number of distinct
/// clauses seen.
pub fn fo_level_oracle(
    inputs: &[Clause],
    max_level: usize,
    max_weight: usize,
) -> (Option<usize>, usize) {
    let mut all: Vec<Clause> = Vec::new();
    let mut keys: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut add = |c: Clause, all: &mut Vec<Clause>| -> bool {
        if c.weight() > max_weight {
            return false;
        }
        let bucket = keys.entry(c.variant_key()).or_default();
        if bucket.iter().any(|&k| clause_variant_equal(&all[k], &c)) {
            return false;
        }
        bucket.push(all.len());
        all.push(c);
        true
    };
    for c in inputs {
        add(c.clone(), &mut all);
    }
    if all.iter().any(Clause::is_empty) {
        return (Some(0), all.len());
    }
    let mut frontier_start = 0;
    for level in 1..=max_level {
        let frontier_end = all.len();
        let mut fresh = Vec::new();
        for k in frontier_start..frontier_end {
            fresh.extend(fo_unary(&all[k]));
            for m in 0..frontier_end {
                fresh.extend(fo_binary(&all[k], &all[m]));
                if m < frontier_start {
                    fresh.extend(fo_binary(&all[m], &all[k]));
                }
            }
        }
        let mut found = false;
        for c in fresh {
            found |= c.is_empty();
            add(c, &mut all);
        }
        if found {
            return (Some(level), all.len());
        }
        frontier_start = frontier_end;
    }
    (None, all.len())
}

pub fn fuzz_signature() -> Signature {
    Signature::counterexample()
}

fn rand_term(rng: &mut ChaCha8Rng, depth: usize) -> String {
    let leaves = ["a", "X", "Y", "Z"];
    if depth == 0 || rng.gen_bool(0.35) {
        return leaves.choose(rng).unwrap().to_string();
    }
    let head = ["f", "g", "H"].choose(rng).unwrap();
    format!("{head}({})", rand_term(rng, depth - 1))
}

fn rand_eq(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..10) {
        0 => {
            let t = rand_term(rng, 3);
            format!("{t} = {t}")
        }
        1 => format!("{} = X", rand_term(rng, 3)),
        2 => format!("X = {}", rand_term(rng, 3)),
        _ => format!("{} = {}", rand_term(rng, 3), rand_term(rng, 3)),
    }
}

fn rand_atom(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..10) {
        0..=5 => rand_eq(rng),
        6 | 7 => format!("({}) = ({})", rand_eq(rng), rand_eq(rng)),
        8 => format!("({}) & ~({})", rand_eq(rng), rand_eq(rng)),
        _ => format!("({}) |o| ({})", rand_eq(rng), rand_eq(rng)),
    }
}

/// A random well-typed clause over `{a, f, g}` with variables `X, Y, Z : i`
/// and `H : i > i`.
pub fn rand_clause(rng: &mut ChaCha8Rng, sig: &Signature) -> Clause {
    let n = rng.gen_range(1..=3);
    let lits: Vec<String> = (0..n)
        .map(|_| {
            let sign = if rng.gen_bool(0.3) { '+' } else { '-' };
            format!("{sign}({})", rand_atom(rng))
        })
        .collect();
    let text = lits.join(" | ");
    parse_clause_standalone(&text, sig).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[derive(Debug, Default, Clone)]
pub struct FuzzStats {
    pub applications: usize,
    pub attempts: usize,
    pub per_rule: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

fn well_formed(c: &Clause) -> Result<(), String> {
    for l in c.literals() {
        if l.atom().type_of().map_err(|e| e.to_string())? != SimpleType::Prop {
            return Err(format!("literal `{l}` is not of type o"));
        }
        if !l.atom().is_beta_normal() {
            return Err(format!("literal `{l}` is not beta-normal"));
        }
    }
    Ok(())
}

/// Independent reading of the Solve side condition.
fn solvable(c: &Clause, i: usize) -> Option<bool> {
    let l = &c.literals()[i];
    if l.polarity() != Polarity::Negative {
        return None;
    }
    let (s, t) = l.atom().as_equation()?;
    let side_ok = |v: &Term, other: &Term| match v {
        Term::Var(x) => Some(!other.free_vars().contains(x)),
        _ => None,
    };
    match (side_ok(s, t), side_ok(t, s)) {
        (None, None) => None,
        (a, b) => Some(a == Some(true) || b == Some(true)),
    }
}

/// Applies random rules to random clauses until `target` applications
/// succeed, checking the kernel invariants on every result.
pub fn fuzz_rules(seed: u64, target: usize) -> FuzzStats {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = fuzz_signature();
    let mut st = FuzzStats::default();
    let rules = [
        "Res",
        "Dec",
        "Solve",
        "SolveKeep",
        "Chain",
        "Triv",
        "FlexRig",
        "Fac",
        "Equiv",
        "Cnf",
    ];
    while st.applications < target && st.attempts < target * 200 {
        st.attempts += 1;
        let c = rand_clause(&mut rng, &sig);
        let d = rand_clause(&mut rng, &sig);
        let rule = *rules.choose(&mut rng).unwrap();
        let i = rng.gen_range(0..c.len());
        let j = rng.gen_range(0..c.len().max(d.len()));
        let n = c.len() as isize;
        let (result, delta): (Option<Vec<Clause>>, Option<isize>) = match rule {
            "Res" => {
                if j >= d.len() {
                    continue;
                }
                (
                    calculus::resolve(&c, i, &d, j).ok().map(|r| vec![r]),
                    Some(d.len() as isize - 1),
                )
            }
            "Dec" => match calculus::decompose(&c, i) {
                Ok(r) => {
                    let arity = c.literals()[i]
                        .atom()
                        .as_equation()
                        .unwrap()
                        .0
                        .strip_app()
                        .1
                        .len() as isize;
                    (Some(vec![r]), Some(arity - 1))
                }
                Err(_) => (None, None),
            },
            "Solve" | "SolveKeep" => {
                let keep = rule == "SolveKeep";
                let r = calculus::solve_subst(&c, i, keep);
                match (solvable(&c, i), &r) {
                    (Some(true), Err(e)) => st
                        .violations
                        .push(format!("Solve rejected solvable literal in {c}: {e}")),
                    (Some(false), Ok(_)) => st
                        .violations
                        .push(format!("occurs check not enforced on {c} at {i}")),
                    (Some(false), Err(e)) if !matches!(e, calculus::RuleError::OccursCheck(_)) => {
                        st.violations
                            .push(format!("occurs failure on {c} reported as {e}"))
                    }
                    (None, Ok(_)) => st
                        .violations
                        .push(format!("Solve applied to unsolvable literal in {c}")),
                    _ => {}
                }
                if let Ok(res) = &r {
                    let (x, _) = calculus::solve_binding(&c, i).unwrap();
                    if !keep && res.free_vars().contains(&x) {
                        st.violations
                            .push(format!("solved variable survives in {res}"));
                    }
                }
                (r.ok().map(|r| vec![r]), Some(if keep { 0 } else { -1 }))
            }
            "Chain" => {
                if i == j || j >= c.len() {
                    continue;
                }
                (
                    calculus::solve_chain(&c, i, j).ok().map(|r| vec![r]),
                    Some(-1),
                )
            }
            "Triv" => (calculus::trivial(&c, i).ok().map(|r| vec![r]), Some(-1)),
            "FlexRig" => match calculus::enumerate_bindings(
                &c,
                i,
                &BindingOptions {
                    free_var_args: rng.gen_bool(0.5),
                },
            ) {
                Ok(bs) if !bs.is_empty() => {
                    let b = bs.choose(&mut rng).unwrap();
                    (
                        calculus::flex_rigid(&c, i, b).ok().map(|r| vec![r]),
                        Some(1),
                    )
                }
                _ => (None, None),
            },
            "Fac" => {
                if i == j || j >= c.len() {
                    continue;
                }
                (calculus::factor(&c, i, j).ok().map(|r| vec![r]), Some(0))
            }
            "Equiv" => (calculus::equiv(&c, i).ok().map(|r| vec![r]), Some(0)),
            "Cnf" => {
                if !calculus::has_connective_literal(&c) {
                    continue;
                }
                let rs = calculus::cnf_all(&c);
                if rs.iter().any(calculus::has_connective_literal) {
                    st.violations
                        .push(format!("cnf_all left a connective in {c}"));
                }
                (Some(rs), None)
            }
            _ => unreachable!(),
        };
        let Some(results) = result else { continue };
        st.applications += 1;
        *st.per_rule.entry(rule.to_string()).or_default() += 1;
        for r in &results {
            if let Err(e) = well_formed(r) {
                st.violations.push(format!("{rule} on {c}: {e}"));
            }
            if let Some(dl) = delta {
                if r.len() as isize != n + dl {
                    st.violations.push(format!(
                        "{rule} on {c}: {} literals, expected {}",
                        r.len(),
                        n + dl
                    ));
                }
            }
        }
    }
    st
}
