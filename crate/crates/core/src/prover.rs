//! Bounded given-clause saturation over the kernel rules.
//!
//! Clauses are selected lightest first (symbol count), ties broken by age.
//! Redundancy elimination is variant detection only. On success the
//! ancestors of `[]` are emitted as a proof script the checker replays.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::calculus::{self, BindingOptions, Rule, RuleError};
use crate::checker::{ProofScript, ProofStep};
use crate::clause::{clause_variant_equal, fresh_var, Clause};
use crate::problem::Problem;
use crate::signature::Signature;
use crate::subst::Substitution;
use crate::syntax::{quote, quote_clause_reparsable, Elaborator, Expr, ParseError, Parser, Tok};
use crate::term::{Term, Var};
use crate::types::SimpleType;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LimitError {
    #[error("limit `{0}` must be strictly positive")]
    NotPositive(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_generated: usize,
    /// Heavier clauses are discarded on generation.
    pub max_weight: usize,
    /// Rigid layers per FlexRig binding. The kernel admits one, so larger
    /// values behave as 1.
    pub max_helper_depth: usize,
    /// Longest derivation path from an input clause.
    pub max_depth: usize,
    pub time: Duration,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_generated: 100_000,
            max_weight: 40,
            max_helper_depth: 1,
            max_depth: 64,
            time: Duration::from_secs(60),
        }
    }
}

impl SearchLimits {
    pub fn validate(&self) -> Result<(), LimitError> {
        let checks = [
            (self.max_generated, "max_generated"),
            (self.max_weight, "max_weight"),
            (self.max_helper_depth, "max_helper_depth"),
            (self.max_depth, "max_depth"),
        ];
        for (v, name) in checks {
            if v == 0 {
                return Err(LimitError::NotPositive(name));
            }
        }
        if self.time.is_zero() {
            return Err(LimitError::NotPositive("time"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    HigherOrder,
    /// No FlexRig, Equiv, Cnf or chain-Solve.
    FirstOrder,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::HigherOrder => "higher-order",
            Mode::FirstOrder => "first-order",
        })
    }
}

/// A binding template `bind X := t`, matched to any flex variable of a
/// compatible type; other variables of `t` become fresh helpers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hint {
    pub var: String,
    pub template: Expr,
}

pub fn parse_hints(text: &str) -> Result<Vec<Hint>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        p.expect_keyword("bind")?;
        let var = p.ident()?;
        p.expect(&Tok::Assign)?;
        let template = p.formula()?;
        out.push(Hint { var, template });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeConfig {
    pub mode: Mode,
    pub hints: Vec<Hint>,
    /// Let enumerated helpers take free variables of the literal as
    /// arguments, which also yields `X := f(H(X))`.
    pub free_var_args: bool,
}

impl ModeConfig {
    pub fn higher_order() -> Self {
        ModeConfig::default()
    }

    pub fn first_order() -> Self {
        ModeConfig {
            mode: Mode::FirstOrder,
            ..ModeConfig::default()
        }
    }

    pub fn with_hints(hints: Vec<Hint>) -> Self {
        ModeConfig {
            hints,
            ..ModeConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Generated,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Refuted,
    Exhausted(Limit),
    /// No unprocessed clause left within the weight and depth bounds.
    Saturated,
}

impl Outcome {
    pub fn is_refutation(&self) -> bool {
        *self == Outcome::Refuted
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Refuted => f.write_str("refutation found"),
            Outcome::Exhausted(Limit::Generated) => {
                f.write_str("limit exhausted (generated clauses)")
            }
            Outcome::Exhausted(Limit::Time) => f.write_str("limit exhausted (time)"),
            Outcome::Saturated => f.write_str("saturated"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Statistics {
    pub generated: usize,
    pub kept: usize,
    pub processed: usize,
    pub variants: usize,
    pub too_heavy: usize,
    pub too_deep: usize,
    /// Decompositions blocked by distinct rigid heads.
    pub head_clashes: usize,
    /// Solve attempts blocked by the occurs check.
    pub occurs_failures: usize,
    /// Generated clauses per rule, indexed like [`Rule::ALL`].
    pub per_rule: [usize; 8],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub mode: Mode,
    pub outcome: Outcome,
    pub stats: Statistics,
    /// Ancestors of `[]` as a replayable script; its `problem` field is
    /// empty until [`SaturationReport::script_for`] fills it.
    pub script: Option<ProofScript>,
}

impl SaturationReport {
    pub fn script_for(&self, problem_ref: &str) -> Option<ProofScript> {
        self.script.clone().map(|mut s| {
            s.problem = problem_ref.to_string();
            s
        })
    }

    pub fn proof_len(&self) -> Option<usize> {
        self.script.as_ref().map(|s| s.steps.len())
    }
}

impl fmt::Display for SaturationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "outcome: {}", self.outcome)?;
        if let Some(n) = self.proof_len() {
            writeln!(f, "proof steps: {n}")?;
        }
        writeln!(f, "generated: {}", s.generated)?;
        writeln!(f, "kept: {}", s.kept)?;
        writeln!(f, "processed: {}", s.processed)?;
        writeln!(
            f,
            "discarded: {} variants, {} too heavy, {} too deep",
            s.variants, s.too_heavy, s.too_deep
        )?;
        writeln!(f, "head clashes: {}", s.head_clashes)?;
        writeln!(f, "occurs-check failures: {}", s.occurs_failures)?;
        let per: Vec<String> = Rule::ALL
            .iter()
            .zip(s.per_rule)
            .filter(|(_, n)| *n > 0)
            .map(|(r, n)| format!("{r} {n}"))
            .collect();
        writeln!(f, "per rule: {}", per.join(", "))
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProveError {
    #[error(transparent)]
    Limits(#[from] LimitError),
}

struct Inference {
    rule: Rule,
    premises: Vec<usize>,
    positions: Vec<usize>,
    binding: Option<(Var, Term)>,
    results: Vec<Clause>,
}

struct Step {
    rule: Rule,
    premises: Vec<usize>,
    positions: Vec<usize>,
    binding: Option<(Var, Term)>,
    results: Vec<Clause>,
    /// Node of each result, when kept.
    nodes: Vec<Option<usize>>,
}

struct Node {
    clause: Clause,
    depth: usize,
    origin: Option<usize>,
}

struct Saturation<'a> {
    sig: &'a Signature,
    inputs: Vec<String>,
    config: &'a ModeConfig,
    limits: &'a SearchLimits,
    nodes: Vec<Node>,
    steps: Vec<Step>,
    index: HashMap<u64, Vec<usize>>,
    queue: BinaryHeap<Reverse<(usize, usize)>>,
    processed: Vec<usize>,
    stats: Statistics,
}

/// Runs the given-clause loop on `problem` under `config` and `limits`.
pub fn prove(
    problem: &Problem,
    config: &ModeConfig,
    limits: &SearchLimits,
) -> Result<SaturationReport, ProveError> {
    limits.validate()?;
    let mut s = Saturation {
        sig: &problem.signature,
        inputs: problem.clauses.iter().map(|(id, _)| id.clone()).collect(),
        config,
        limits,
        nodes: Vec::new(),
        steps: Vec::new(),
        index: HashMap::new(),
        queue: BinaryHeap::new(),
        processed: Vec::new(),
        stats: Statistics::default(),
    };
    for (_, c) in &problem.clauses {
        let n = s.nodes.len();
        s.nodes.push(Node {
            clause: c.clone(),
            depth: 0,
            origin: None,
        });
        s.index.entry(c.variant_key()).or_default().push(n);
        s.queue.push(Reverse((c.weight(), n)));
        if c.is_empty() {
            return Ok(s.finish(Outcome::Refuted, Some(n)));
        }
    }
    s.stats.kept = s.nodes.len();
    let (outcome, goal) = s.run();
    Ok(s.finish(outcome, goal))
}

/// First-order restricted saturation, reporting how the search ends.
pub fn fo_exhaustion_report(
    problem: &Problem,
    limits: &SearchLimits,
) -> Result<SaturationReport, ProveError> {
    prove(problem, &ModeConfig::first_order(), limits)
}

impl Saturation<'_> {
    fn run(&mut self) -> (Outcome, Option<usize>) {
        let start = Instant::now();
        while let Some(Reverse((_, given))) = self.queue.pop() {
            if start.elapsed() > self.limits.time {
                return (Outcome::Exhausted(Limit::Time), None);
            }
            self.processed.push(given);
            self.stats.processed += 1;
            for inf in self.infer(given) {
                match self.add(inf) {
                    Added::Goal(n) => return (Outcome::Refuted, Some(n)),
                    Added::LimitHit => return (Outcome::Exhausted(Limit::Generated), None),
                    Added::Ok => {}
                }
            }
        }
        (Outcome::Saturated, None)
    }

    fn add(&mut self, inf: Inference) -> Added {
        let depth = 1 + inf
            .premises
            .iter()
            .map(|&p| self.nodes[p].depth)
            .max()
            .unwrap_or(0);
        let step = self.steps.len();
        let mut nodes = Vec::with_capacity(inf.results.len());
        let mut goal = None;
        let rule_ix = Rule::ALL
            .iter()
            .position(|r| *r == inf.rule)
            .expect("rule listed");
        for c in &inf.results {
            self.stats.generated += 1;
            self.stats.per_rule[rule_ix] += 1;
            nodes.push(self.keep(c, depth, step));
            if c.is_empty() && goal.is_none() {
                goal = nodes.last().copied().flatten();
            }
        }
        self.steps.push(Step {
            rule: inf.rule,
            premises: inf.premises,
            positions: inf.positions,
            binding: inf.binding,
            results: inf.results,
            nodes,
        });
        if let Some(n) = goal {
            return Added::Goal(n);
        }
        if self.stats.generated >= self.limits.max_generated {
            return Added::LimitHit;
        }
        Added::Ok
    }

    fn keep(&mut self, c: &Clause, depth: usize, step: usize) -> Option<usize> {
        if !c.is_empty() {
            if c.weight() > self.limits.max_weight {
                self.stats.too_heavy += 1;
                return None;
            }
            if depth > self.limits.max_depth {
                self.stats.too_deep += 1;
                return None;
            }
        }
        let key = c.variant_key();
        let bucket = self.index.entry(key).or_default();
        if bucket
            .iter()
            .any(|&n| clause_variant_equal(&self.nodes[n].clause, c))
        {
            self.stats.variants += 1;
            return None;
        }
        let n = self.nodes.len();
        bucket.push(n);
        self.nodes.push(Node {
            clause: c.clone(),
            depth,
            origin: Some(step),
        });
        self.queue.push(Reverse((c.weight(), n)));
        self.stats.kept += 1;
        Some(n)
    }

    fn infer(&mut self, g: usize) -> Vec<Inference> {
        let ho = self.config.mode == Mode::HigherOrder;
        let c = self.nodes[g].clause.clone();
        let mut out = Vec::new();
        let one = |r: Result<Clause, RuleError>| r.map(|c| vec![c]);

        for &p in &self.processed.clone() {
            let d = self.nodes[p].clause.clone();
            for (i, li) in c.literals().iter().enumerate() {
                for (j, lj) in d.literals().iter().enumerate() {
                    if li.polarity() == lj.polarity() {
                        continue;
                    }
                    let r = one(calculus::resolve(&c, i, &d, j));
                    emit(
                        &mut out,
                        &mut self.stats,
                        Rule::Res,
                        vec![g, p],
                        vec![i, j],
                        None,
                        r,
                    );
                    if p != g {
                        let r = one(calculus::resolve(&d, j, &c, i));
                        emit(
                            &mut out,
                            &mut self.stats,
                            Rule::Res,
                            vec![p, g],
                            vec![j, i],
                            None,
                            r,
                        );
                    }
                }
            }
        }

        for i in 0..c.len() {
            let lit = &c.literals()[i];
            if lit.is_negative() && lit.atom().as_equation().is_some() {
                emit(
                    &mut out,
                    &mut self.stats,
                    Rule::Triv,
                    vec![g],
                    vec![i],
                    None,
                    one(calculus::trivial(&c, i)),
                );
                emit(
                    &mut out,
                    &mut self.stats,
                    Rule::Dec,
                    vec![g],
                    vec![i],
                    None,
                    one(calculus::decompose(&c, i)),
                );
                for keep in [false, true] {
                    let r = one(calculus::solve_subst(&c, i, keep));
                    emit(
                        &mut out,
                        &mut self.stats,
                        Rule::Solve,
                        vec![g],
                        vec![i],
                        None,
                        r,
                    );
                }
            }
            for j in 0..c.len() {
                if i == j {
                    continue;
                }
                if c.literals()[j].polarity() == lit.polarity() {
                    emit(
                        &mut out,
                        &mut self.stats,
                        Rule::Fac,
                        vec![g],
                        vec![i, j],
                        None,
                        one(calculus::factor(&c, i, j)),
                    );
                }
                if ho {
                    let r = one(calculus::solve_chain(&c, i, j));
                    if r.is_ok() {
                        emit(
                            &mut out,
                            &mut self.stats,
                            Rule::Solve,
                            vec![g],
                            vec![i, j],
                            None,
                            r,
                        );
                    }
                }
            }
            if ho {
                if let Ok(r) = calculus::equiv(&c, i) {
                    emit(
                        &mut out,
                        &mut self.stats,
                        Rule::Equiv,
                        vec![g],
                        vec![i],
                        None,
                        Ok(vec![r]),
                    );
                }
                for b in self.bindings(&c, i) {
                    let r = one(calculus::flex_rigid(&c, i, &b.1));
                    emit(
                        &mut out,
                        &mut self.stats,
                        Rule::FlexRig,
                        vec![g],
                        vec![i],
                        Some(b),
                        r,
                    );
                }
            }
        }
        if ho && calculus::has_connective_literal(&c) {
            out.push(Inference {
                rule: Rule::Cnf,
                premises: vec![g],
                positions: vec![],
                binding: None,
                results: calculus::cnf_all(&c),
            });
        }
        out
    }

    /// Hint instances when any hint fits the flex variable, otherwise the
    /// enumerated imitations and projections.
    fn bindings(&self, c: &Clause, i: usize) -> Vec<(Var, Term)> {
        let Ok((flex, _)) = calculus::flex_rigid_pair(c, i) else {
            return Vec::new();
        };
        let mut out: Vec<Term> = Vec::new();
        for h in &self.config.hints {
            if let Some(t) = instantiate_hint(h, &flex, c, self.sig) {
                out.push(t);
            }
        }
        if out.is_empty() {
            let opts = BindingOptions {
                free_var_args: self.config.free_var_args,
            };
            out = calculus::enumerate_bindings(c, i, &opts).unwrap_or_default();
        }
        out.into_iter().map(|t| (flex.clone(), t)).collect()
    }

    fn finish(&self, outcome: Outcome, goal: Option<usize>) -> SaturationReport {
        SaturationReport {
            mode: self.config.mode,
            outcome,
            stats: self.stats.clone(),
            script: goal.map(|g| self.extract(g)),
        }
    }

    /// Minimal script deriving node `goal`: its ancestor steps in order.
    fn extract(&self, goal: usize) -> ProofScript {
        let mut needed: HashSet<usize> = HashSet::new();
        let mut stack = vec![goal];
        while let Some(n) = stack.pop() {
            if let Some(s) = self.nodes[n].origin {
                if needed.insert(s) {
                    stack.extend(self.steps[s].premises.iter().copied());
                }
            }
        }
        let mut order: Vec<usize> = needed.into_iter().collect();
        order.sort_unstable();

        let mut names: HashMap<usize, String> = HashMap::new();
        let mut used: HashSet<String> = self.inputs.iter().cloned().collect();
        for (k, id) in self.inputs.iter().enumerate() {
            names.insert(k, id.clone());
        }
        let mut counter = self.inputs.len();
        let mut fresh = |used: &mut HashSet<String>| loop {
            counter += 1;
            let id = format!("C{counter}");
            if used.insert(id.clone()) {
                return id;
            }
        };

        let mut steps = Vec::new();
        for s in order {
            let st = &self.steps[s];
            let premises = st.premises.iter().map(|p| names[p].clone()).collect();
            let mut results = Vec::new();
            for node in &st.nodes {
                let id = fresh(&mut used);
                if let Some(n) = node {
                    names.insert(*n, id.clone());
                }
                results.push(id);
            }
            let premise_clause = &self.nodes[st.premises[0]].clause;
            let binding = st.binding.as_ref().map(|(v, t)| {
                let known = premise_clause.var_names();
                let annotate = t
                    .free_vars()
                    .into_iter()
                    .filter(|w| w.ty != SimpleType::Ind && !known.contains(&*w.name))
                    .collect();
                (v.name.to_string(), quote(t, &annotate))
            });
            steps.push(ProofStep {
                line: 0,
                results,
                rule: st.rule,
                starred: false,
                premises,
                positions: (st.rule != Rule::Cnf).then(|| st.positions.clone()),
                binding,
                expected: st
                    .results
                    .iter()
                    .map(|c| quote_clause_reparsable(c, self.sig))
                    .collect(),
            });
        }
        ProofScript {
            problem: String::new(),
            steps,
        }
    }
}

fn emit(
    out: &mut Vec<Inference>,
    stats: &mut Statistics,
    rule: Rule,
    premises: Vec<usize>,
    positions: Vec<usize>,
    binding: Option<(Var, Term)>,
    r: Result<Vec<Clause>, RuleError>,
) {
    match r {
        Ok(results) => out.push(Inference {
            rule,
            premises,
            positions,
            binding,
            results,
        }),
        Err(RuleError::Clash { .. }) => stats.head_clashes += 1,
        Err(RuleError::OccursCheck(_)) => stats.occurs_failures += 1,
        Err(_) => {}
    }
}

enum Added {
    Ok,
    Goal(usize),
    LimitHit,
}

/// Elaborates hint `h` at the type of `flex` and renames its other
/// variables apart from `c`.
fn instantiate_hint(h: &Hint, flex: &Var, c: &Clause, sig: &Signature) -> Option<Term> {
    let hint_var = Var::new(h.var.as_str(), flex.ty.clone());
    let mut el = Elaborator::new(sig).with_vars([hint_var.clone()]);
    el.constrain_like_var(&h.var, &h.template).ok()?;
    let t = el.term(&h.template).ok()?;
    let mut avoid = c.var_names();
    let mut sigma = Substitution::new();
    for v in t.free_vars() {
        let target = if v == hint_var {
            flex.clone()
        } else {
            fresh_var(&v.name, v.ty.clone(), &mut avoid)
        };
        sigma.insert(v, Term::Var(target)).ok()?;
    }
    Some(sigma.apply(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{check_script, Verdict};

    fn verify(p: &Problem, r: &SaturationReport) {
        let script = r.script_for("inline").expect("script emitted");
        let report = check_script(&script, p).expect("script elaborates");
        assert_eq!(
            report.verdict,
            Verdict::Refuted,
            "{}",
            crate::checker::print_script(&script)
        );
    }

    #[test]
    fn prop_pair_two_steps() {
        let p = Problem::parse(crate::problem::PROP_PAIR).unwrap();
        for cfg in [ModeConfig::higher_order(), ModeConfig::first_order()] {
            let r = prove(&p, &cfg, &SearchLimits::default()).unwrap();
            assert_eq!(r.outcome, Outcome::Refuted);
            assert_eq!(r.proof_len(), Some(2));
            let rules: Vec<Rule> = r
                .script
                .as_ref()
                .unwrap()
                .steps
                .iter()
                .map(|s| s.rule)
                .collect();
            assert_eq!(rules, vec![Rule::Res, Rule::Triv]);
            verify(&p, &r);
        }
    }

    #[test]
    fn reflexivity_one_step() {
        let p = Problem::parse(include_str!("../data/reflexivity.erp")).unwrap();
        let r = prove(&p, &ModeConfig::higher_order(), &SearchLimits::default()).unwrap();
        assert_eq!(r.proof_len(), Some(1));
        verify(&p, &r);
    }

    #[test]
    fn hint_parsing_and_instantiation() {
        let hints = parse_hints("% comment\nbind X := f(H(X))\n").unwrap();
        assert_eq!(hints.len(), 1);
        let p = Problem::counterexample();
        let c = p.clause("C2").unwrap();
        let flex = c.free_vars()[0].clone();
        let t = instantiate_hint(&hints[0], &flex, c, &p.signature).unwrap();
        assert_eq!(t.to_string(), "f(H1(X))");
        assert!(parse_hints("bind X f(a)").is_err());
    }

    #[test]
    fn limits_must_be_positive() {
        let l = SearchLimits {
            max_weight: 0,
            ..SearchLimits::default()
        };
        assert!(l.validate().is_err());
        let p = Problem::counterexample();
        assert!(prove(&p, &ModeConfig::first_order(), &l).is_err());
    }
}
