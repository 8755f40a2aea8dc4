//! Proof script syntax.
//!
//! ```text
//! problem "counterexample.erp"
//! step C3 = FlexRig(C2) expect -(f(g(X)) = X) | -(X = f(H(X)))
//! step C5, C6 = Cnf(C4) expect +(A) | +(B) ; -(A) | -(B)
//! step C11 = FlexRig(C10; bind H := ^Y:i. a) expect ...
//! step C8 = Dec*(C7) expect ...
//! ```
//!
//! Optional `; at i, j` inside the parentheses pins 1-based literal
//! positions.

use std::collections::HashSet;

use crate::calculus::Rule;
use crate::syntax::{print_clause_expr, print_expr, ClauseExpr, Expr, ParseError, Parser, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    /// Source line, 1-based; 0 for programmatically built steps.
    pub line: usize,
    pub results: Vec<String>,
    pub rule: Rule,
    /// `Rule*`: up to three iterated applications.
    pub starred: bool,
    pub premises: Vec<String>,
    /// 0-based literal positions, when pinned.
    pub positions: Option<Vec<usize>>,
    pub binding: Option<(String, Expr)>,
    pub expected: Vec<ClauseExpr>,
}

impl ProofStep {
    pub fn expects_empty(&self) -> bool {
        self.expected.iter().any(|c| c.literals.is_empty())
    }

    /// `Rule[*](P1, P2)` as shown in derivation tables.
    pub fn label(&self) -> String {
        format!(
            "{}{}({})",
            self.rule,
            if self.starred { "*" } else { "" },
            self.premises.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProofScript {
    pub problem: String,
    pub steps: Vec<ProofStep>,
}

impl ProofScript {
    /// True when the final step expects the empty clause.
    pub fn has_goal(&self) -> bool {
        self.steps.last().is_some_and(ProofStep::expects_empty)
    }
}

pub fn parse_script(text: &str) -> Result<ProofScript, ParseError> {
    let mut p = Parser::new(text)?;
    p.expect_keyword("problem")?;
    let problem = p.string()?;
    let mut steps: Vec<ProofStep> = Vec::new();
    let mut ids: HashSet<String> = HashSet::new();
    let mut goals = 0;
    while !p.at_end() {
        let pos = p.pos();
        let step = parse_step(&mut p)?;
        for id in &step.results {
            if !ids.insert(id.clone()) {
                return Err(ParseError::at(pos, format!("duplicate result id `{id}`")));
            }
        }
        if step.expects_empty() {
            goals += 1;
            if goals > 1 {
                return Err(ParseError::at(
                    pos,
                    "more than one step expects the empty clause",
                ));
            }
        }
        steps.push(step);
    }
    Ok(ProofScript { problem, steps })
}

fn parse_step(p: &mut Parser) -> Result<ProofStep, ParseError> {
    let line = p.pos().line;
    p.expect_keyword("step")?;
    let mut results = vec![p.ident()?];
    while p.eat(&Tok::Comma) {
        results.push(p.ident()?);
    }
    p.expect(&Tok::Eq)?;
    let rule_pos = p.pos();
    let label = p.ident()?;
    let rule: Rule = label
        .parse()
        .map_err(|m: String| ParseError::at(rule_pos, m))?;
    let starred = p.eat(&Tok::Star);
    p.expect(&Tok::LParen)?;
    let mut premises = vec![p.ident()?];
    while p.eat(&Tok::Comma) {
        premises.push(p.ident()?);
    }
    let mut positions = None;
    let mut binding = None;
    while p.eat(&Tok::Semi) {
        if p.is_keyword("bind") {
            p.bump();
            let var = p.ident()?;
            p.expect(&Tok::Assign)?;
            binding = Some((var, p.formula()?));
        } else if p.is_keyword("at") {
            p.bump();
            let mut ps = vec![p.int()?];
            while p.eat(&Tok::Comma) {
                ps.push(p.int()?);
            }
            if ps.contains(&0) {
                return Err(p.error("literal positions are 1-based"));
            }
            positions = Some(ps.into_iter().map(|k| k - 1).collect());
        } else {
            return Err(p.error("expected `bind` or `at`"));
        }
    }
    p.expect(&Tok::RParen)?;
    p.expect_keyword("expect")?;
    let mut expected = vec![p.clause()?];
    while p.eat(&Tok::Semi) {
        expected.push(p.clause()?);
    }

    if premises.len() != rule.premise_count() {
        return Err(ParseError::at(
            rule_pos,
            format!(
                "{rule} takes {} premise(s), got {}",
                rule.premise_count(),
                premises.len()
            ),
        ));
    }
    if expected.len() != results.len() {
        return Err(ParseError::at(
            rule_pos,
            format!(
                "{} result id(s) but {} expected clause(s)",
                results.len(),
                expected.len()
            ),
        ));
    }
    if results.len() > 1 && rule != Rule::Cnf {
        return Err(ParseError::at(
            rule_pos,
            format!("{rule} has a single conclusion"),
        ));
    }
    if binding.is_some() && rule != Rule::FlexRig {
        return Err(ParseError::at(
            rule_pos,
            "`bind` is only meaningful for FlexRig",
        ));
    }
    if starred && matches!(rule, Rule::Res | Rule::FlexRig | Rule::Cnf) {
        return Err(ParseError::at(
            rule_pos,
            format!("{rule} cannot be iterated"),
        ));
    }
    Ok(ProofStep {
        line,
        results,
        rule,
        starred,
        premises,
        positions,
        binding,
        expected,
    })
}

pub fn print_step(s: &ProofStep) -> String {
    let mut args = s.premises.join(", ");
    if let Some(ps) = &s.positions {
        let ps: Vec<String> = ps.iter().map(|k| (k + 1).to_string()).collect();
        args.push_str(&format!("; at {}", ps.join(", ")));
    }
    if let Some((v, t)) = &s.binding {
        args.push_str(&format!("; bind {v} := {}", print_expr(t)));
    }
    let expected: Vec<String> = s.expected.iter().map(print_clause_expr).collect();
    format!(
        "step {} = {}{}({args}) expect {}",
        s.results.join(", "),
        s.rule,
        if s.starred { "*" } else { "" },
        expected.join(" ; ")
    )
}

pub fn print_script(s: &ProofScript) -> String {
    let mut out = format!("problem \"{}\"\n\n", s.problem);
    for step in &s.steps {
        out.push_str(&print_step(step));
        out.push('\n');
    }
    out
}
