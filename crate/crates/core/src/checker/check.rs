//! Expectation-directed replay of proof scripts.
//!
//! Scripts omit literal positions and the reading of `Solve`, as derivation
//! tables do. For each step the checker searches the small parameter space
//! of the named rule and accepts iff some instance yields clauses that are
//! variants of the expected ones.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use super::script::{ProofScript, ProofStep};
use crate::calculus::{self, BindingOptions, Rule, RuleError, SolveMode};
use crate::clause::{clause_sets_variant_equal, Clause};
use crate::problem::Problem;
use crate::signature::Signature;
use crate::syntax::{elaborate_clause, Elaborator};
use crate::term::Term;

/// Iterations tried for starred labels.
pub const MAX_ITERATIONS: usize = 3;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Elaboration { line: usize, message: String },
}

/// Parameters under which a step was accepted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    /// Literal positions per iteration (0-based).
    pub positions: Vec<Vec<usize>>,
    /// Solve readings, one per iteration for `Solve` steps.
    pub modes: Vec<SolveMode>,
    pub binding: Option<Term>,
}

impl Witness {
    pub fn iterations(&self) -> usize {
        self.positions.len().max(1)
    }

    pub fn used_chain(&self) -> bool {
        self.modes.contains(&SolveMode::Chain)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Verified(Witness),
    Failed {
        reason: String,
        nearest: Option<Clause>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub line: usize,
    pub results: Vec<String>,
    pub label: String,
    pub rule: Rule,
    pub starred: bool,
    pub premises: Vec<String>,
    pub status: StepStatus,
    /// The expected clauses, as bound to the result ids.
    pub clauses: Vec<Clause>,
}

impl StepReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.status, StepStatus::Verified(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every step verified and the last one derives `[]`.
    Refuted,
    /// Every step verified but no empty clause at the end.
    NoGoal,
    /// The step on `line` (result ids `ids`) could not be verified.
    Failed { line: usize, ids: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub inputs: Vec<(String, Clause)>,
    pub steps: Vec<StepReport>,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn is_success(&self) -> bool {
        self.verdict == Verdict::Refuted
    }

    /// Result ids of steps accepted only through the chain reading of Solve.
    pub fn chain_steps(&self) -> Vec<String> {
        self.steps
            .iter()
            .filter(|s| matches!(&s.status, StepStatus::Verified(w) if w.used_chain()))
            .flat_map(|s| s.results.clone())
            .collect()
    }

    pub fn verified_count(&self) -> usize {
        self.steps.iter().filter(|s| s.is_verified()).count()
    }

    /// Number of derived clauses bound by verified steps.
    pub fn derived_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.is_verified())
            .map(|s| s.results.len())
            .sum()
    }

    /// Rows in the layout of a derivation table: label, result id, clause.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        for (id, c) in &self.inputs {
            rows.push((String::new(), format!("{id}: {c}")));
        }
        for s in &self.steps {
            for (k, id) in s.results.iter().enumerate() {
                let label = if k == 0 {
                    format!("{}:", s.label)
                } else {
                    String::new()
                };
                let text = match (&s.status, s.clauses.get(k)) {
                    (StepStatus::Verified(_), Some(c)) if c.is_empty() => "[]".to_string(),
                    (StepStatus::Verified(_), Some(c)) => format!("{id}: {c}"),
                    _ => format!("{id}: ??"),
                };
                rows.push((label, text));
            }
        }
        let width = rows
            .iter()
            .map(|(l, _)| l.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (l, t) in rows {
            // The goal row reads like the tables: `Triv(C23): []`.
            if t == "[]" {
                let _ = writeln!(out, "{l} {t}");
            } else {
                let _ = writeln!(out, "{l:<width$} {t}");
            }
        }
        out
    }

    /// Verdict line, plus the failure reason and chain-mode note if any.
    pub fn render_summary(&self) -> String {
        let mut out = String::new();
        let _ = match &self.verdict {
            Verdict::Refuted => writeln!(
                out,
                "verdict: refuted ({} steps verified, {} derived clauses)",
                self.verified_count(),
                self.derived_count()
            ),
            Verdict::NoGoal => writeln!(
                out,
                "verdict: verified, no goal ({} steps verified)",
                self.verified_count()
            ),
            Verdict::Failed { line, ids } => {
                let step = self.steps.last().expect("failed step is reported");
                let mut msg = format!("verdict: FAILED at line {line} ({})", ids.join(", "));
                if let StepStatus::Failed { reason, nearest } = &step.status {
                    msg.push_str(&format!(": {reason}"));
                    if let Some(n) = nearest {
                        msg.push_str(&format!("\n  nearest computed clause: {n}"));
                    }
                }
                writeln!(out, "{msg}")
            }
        };
        let chain = self.chain_steps();
        if !chain.is_empty() {
            let _ = writeln!(
                out,
                "note: chain reading of Solve used for {}",
                chain.join(", ")
            );
        }
        out
    }

    /// One line per step: `<id> <rule> <status> [<mode>]`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let rule = format!("{}{}", s.rule, if s.starred { "*" } else { "" });
            let (status, mode) = match &s.status {
                StepStatus::Verified(w) => {
                    let mut mode = String::new();
                    if !w.modes.is_empty() {
                        let ms: Vec<String> = w.modes.iter().map(|m| m.to_string()).collect();
                        mode = ms.join("+");
                    } else if s.starred {
                        mode = format!("x{}", w.iterations());
                    }
                    ("verified", mode)
                }
                StepStatus::Failed { .. } => ("failed", String::new()),
            };
            let id = s.results.join(",");
            if mode.is_empty() {
                let _ = writeln!(out, "{id} {rule} {status}");
            } else {
                let _ = writeln!(out, "{id} {rule} {status} {mode}");
            }
        }
        out
    }
}

/// Clauses known so far, by id.
#[derive(Clone, Debug, Default)]
pub struct ProofState {
    clauses: BTreeMap<String, Clause>,
}

impl ProofState {
    pub fn from_problem(problem: &Problem) -> Self {
        ProofState {
            clauses: problem.clauses.iter().cloned().collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&Clause> {
        self.clauses.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.clauses.contains_key(id)
    }

    pub fn insert(&mut self, id: String, c: Clause) {
        self.clauses.insert(id, c);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub reason: String,
    pub nearest: Option<Clause>,
}

#[derive(Clone, Debug)]
struct Candidate {
    results: Vec<Clause>,
    witness: Witness,
}

/// Elaborates the expected clauses of a step against the signature.
pub fn expected_clauses(step: &ProofStep, sig: &Signature) -> Result<Vec<Clause>, ScriptError> {
    step.expected
        .iter()
        .map(|c| {
            elaborate_clause(c, sig).map_err(|message| ScriptError::Elaboration {
                line: step.line,
                message,
            })
        })
        .collect()
}

/// Verifies one step and binds its expected clauses in `state`.
pub fn check_step(
    state: &mut ProofState,
    step: &ProofStep,
    sig: &Signature,
) -> Result<Result<Witness, StepFailure>, ScriptError> {
    let expected = expected_clauses(step, sig)?;
    let fail = |reason: String| {
        Ok(Err(StepFailure {
            reason,
            nearest: None,
        }))
    };
    let mut premises = Vec::new();
    for id in &step.premises {
        match state.get(id) {
            Some(c) => premises.push(c.clone()),
            None => return fail(format!("unknown premise `{id}`")),
        }
    }
    if let Some(id) = step.results.iter().find(|id| state.contains(id)) {
        return fail(format!("result id `{id}` is already defined"));
    }
    let binding = match &step.binding {
        None => None,
        Some((var, expr)) => {
            let mut el = Elaborator::new(sig).with_vars(premises[0].free_vars());
            let term = el
                .constrain_like_var(var, expr)
                .and_then(|()| el.term(expr))
                .map_err(|message| ScriptError::Elaboration {
                    line: step.line,
                    message,
                })?;
            Some((var.clone(), term))
        }
    };

    let mut nearest: Option<Clause> = None;
    let mut last_error: Option<RuleError> = None;
    let mut consider = |cands: &[Candidate]| -> Option<Witness> {
        for cand in cands {
            if clause_sets_variant_equal(&cand.results, &expected) {
                return Some(cand.witness.clone());
            }
            for r in &cand.results {
                let better = match &nearest {
                    None => true,
                    Some(n) => distance(r, &expected) < distance(n, &expected),
                };
                if better {
                    nearest = Some(r.clone());
                }
            }
        }
        None
    };

    let levels = if step.starred { MAX_ITERATIONS } else { 1 };
    let mut frontier = vec![Candidate {
        results: vec![],
        witness: Witness::default(),
    }];
    let mut found = None;
    for level in 0..levels {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for base in &frontier {
            let inputs: Vec<Clause> = if level == 0 {
                premises.clone()
            } else {
                base.results.clone()
            };
            let positions = if level == 0 {
                step.positions.as_deref()
            } else {
                None
            };
            let cands = match single_step(step.rule, &inputs, positions, binding.as_ref()) {
                Ok(c) => c,
                Err(e) => {
                    last_error = Some(e);
                    continue;
                }
            };
            for mut c in cands {
                let key: Vec<u64> = c.results.iter().map(Clause::variant_key).collect();
                if !seen.insert(key) {
                    continue;
                }
                let mut w = base.witness.clone();
                w.positions.extend(c.witness.positions);
                w.modes.extend(c.witness.modes);
                if c.witness.binding.is_some() {
                    w.binding = c.witness.binding.take();
                }
                c.witness = w;
                next.push(c);
            }
        }
        if let Some(w) = consider(&next) {
            found = Some(w);
            break;
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }

    match found {
        Some(w) => {
            for (id, c) in step.results.iter().zip(expected) {
                state.insert(id.clone(), c);
            }
            Ok(Ok(w))
        }
        None => {
            let reason = match (&nearest, last_error) {
                (None, Some(e)) => format!("{} does not apply: {e}", step.rule),
                _ => "no rule instance yields the expected clause".to_string(),
            };
            Ok(Err(StepFailure { reason, nearest }))
        }
    }
}

/// Rough mismatch measure for reporting the nearest computed clause.
fn distance(c: &Clause, expected: &[Clause]) -> usize {
    expected
        .iter()
        .map(|e| {
            let common = c
                .literals()
                .iter()
                .filter(|l| e.literals().iter().any(|m| m == *l))
                .count();
            c.len().abs_diff(e.len()) + (c.len().min(e.len()) - common.min(c.len().min(e.len())))
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn index_choices(len: usize, pinned: Option<usize>) -> Vec<usize> {
    match pinned {
        Some(k) => vec![k],
        None => (0..len).collect(),
    }
}

/// All instances of `rule` on `premises` (one application), in search order.
fn single_step(
    rule: Rule,
    premises: &[Clause],
    positions: Option<&[usize]>,
    binding: Option<&(String, Term)>,
) -> Result<Vec<Candidate>, RuleError> {
    let pin = |k: usize| positions.and_then(|p| p.get(k).copied());
    let mut out = Vec::new();
    let mut last_err = None;
    let mut push = |r: Result<Vec<Clause>, RuleError>, w: Witness| match r {
        Ok(results) => out.push(Candidate {
            results,
            witness: w,
        }),
        Err(e) => last_err = Some(e),
    };
    let one = |pos: Vec<usize>| Witness {
        positions: vec![pos],
        ..Witness::default()
    };
    let c = &premises[0];
    match rule {
        Rule::Res => {
            let d = &premises[1];
            for i in index_choices(c.len(), pin(0)) {
                for j in index_choices(d.len(), pin(1)) {
                    push(
                        calculus::resolve(c, i, d, j).map(|r| vec![r]),
                        one(vec![i, j]),
                    );
                }
            }
        }
        Rule::Dec => {
            for i in index_choices(c.len(), pin(0)) {
                push(calculus::decompose(c, i).map(|r| vec![r]), one(vec![i]));
            }
        }
        Rule::Triv => {
            for i in index_choices(c.len(), pin(0)) {
                push(calculus::trivial(c, i).map(|r| vec![r]), one(vec![i]));
            }
        }
        Rule::Equiv => {
            for i in index_choices(c.len(), pin(0)) {
                push(calculus::equiv(c, i).map(|r| vec![r]), one(vec![i]));
            }
        }
        Rule::Fac => {
            for i in index_choices(c.len(), pin(0)) {
                for j in index_choices(c.len(), pin(1)) {
                    push(calculus::factor(c, i, j).map(|r| vec![r]), one(vec![i, j]));
                }
            }
        }
        Rule::Solve => {
            for mode in SolveMode::ORDER {
                let w = |pos: Vec<usize>| Witness {
                    positions: vec![pos],
                    modes: vec![mode],
                    binding: None,
                };
                match mode {
                    SolveMode::Drop | SolveMode::Keep => {
                        if positions.is_some_and(|p| p.len() != 1) {
                            continue;
                        }
                        for i in index_choices(c.len(), pin(0)) {
                            let r = calculus::solve_subst(c, i, mode == SolveMode::Keep);
                            push(r.map(|r| vec![r]), w(vec![i]));
                        }
                    }
                    SolveMode::Chain => {
                        if positions.is_some_and(|p| p.len() != 2) {
                            continue;
                        }
                        for i in index_choices(c.len(), pin(0)) {
                            for j in index_choices(c.len(), pin(1)) {
                                push(
                                    calculus::solve_chain(c, i, j).map(|r| vec![r]),
                                    w(vec![i, j]),
                                );
                            }
                        }
                    }
                }
            }
        }
        Rule::Cnf => {
            if calculus::has_connective_literal(c) {
                push(Ok(calculus::cnf_all(c)), Witness::default());
            } else {
                push(Err(RuleError::NoConnective), Witness::default());
            }
        }
        Rule::FlexRig => {
            for i in index_choices(c.len(), pin(0)) {
                let (flex, _) = match calculus::flex_rigid_pair(c, i) {
                    Ok(p) => p,
                    Err(e) => {
                        push(Err(e), Witness::default());
                        continue;
                    }
                };
                let bindings = match binding {
                    Some((var, t)) if *var == *flex.name => vec![t.clone()],
                    Some(_) => continue,
                    None => {
                        let opts = BindingOptions {
                            free_var_args: true,
                        };
                        match calculus::enumerate_bindings(c, i, &opts) {
                            Ok(b) => b,
                            Err(e) => {
                                push(Err(e), Witness::default());
                                continue;
                            }
                        }
                    }
                };
                for b in bindings {
                    let w = Witness {
                        positions: vec![vec![i]],
                        modes: vec![],
                        binding: Some(b.clone()),
                    };
                    push(calculus::flex_rigid(c, i, &b).map(|r| vec![r]), w);
                }
            }
        }
    }
    if out.is_empty() {
        if let Some(e) = last_err {
            return Err(e);
        }
    }
    Ok(out)
}

/// Replays every step; stops at the first failure.
pub fn check_script(script: &ProofScript, problem: &Problem) -> Result<CheckReport, ScriptError> {
    let mut state = ProofState::from_problem(problem);
    let mut steps = Vec::new();
    let mut verdict = None;
    for step in &script.steps {
        let outcome = check_step(&mut state, step, &problem.signature)?;
        let clauses = step
            .results
            .iter()
            .filter_map(|id| state.get(id).cloned())
            .collect();
        let status = match outcome {
            Ok(w) => StepStatus::Verified(w),
            Err(f) => StepStatus::Failed {
                reason: f.reason,
                nearest: f.nearest,
            },
        };
        let failed = !matches!(status, StepStatus::Verified(_));
        steps.push(StepReport {
            line: step.line,
            results: step.results.clone(),
            label: step.label(),
            rule: step.rule,
            starred: step.starred,
            premises: step.premises.clone(),
            status,
            clauses,
        });
        if failed {
            verdict = Some(Verdict::Failed {
                line: step.line,
                ids: step.results.clone(),
            });
            break;
        }
    }
    let verdict = verdict.unwrap_or(if script.has_goal() {
        Verdict::Refuted
    } else {
        Verdict::NoGoal
    });
    Ok(CheckReport {
        inputs: problem.clauses.clone(),
        steps,
        verdict,
    })
}
