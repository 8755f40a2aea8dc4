//! Inference rules as clause-to-clause operations.
//!
//! Every rule works on literal positions of its premises and returns fresh
//! clauses; premises are never modified. New constraints are always
//! negative equations `[s = t]^F`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clause::{fresh_var, rename_apart, Clause, Literal, Polarity};
use crate::subst::Substitution;
use crate::term::{Const, Term, TypeError, Var};
use crate::types::SimpleType;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("literal index {index} out of range for clause of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("literals have the same polarity")]
    SamePolarity,
    #[error("literals have different polarities")]
    PolarityMismatch,
    #[error("the two literal positions coincide")]
    IndexCollision,
    #[error("literal must be negative")]
    PositiveLiteral,
    #[error("atom is not an equation")]
    NotEquation,
    #[error("head symbol clash: `{left}` vs `{right}`")]
    Clash { left: String, right: String },
    #[error("equation side has a variable head")]
    Flex,
    #[error("head arity mismatch")]
    ArityMismatch,
    #[error("equation side has no rigid head")]
    NotRigid,
    #[error("occurs check: `{0}` occurs in the other side")]
    OccursCheck(String),
    #[error("neither side is a variable")]
    NotSolvable,
    #[error("literals do not form a chain s = X, X = u")]
    ChainMismatch,
    #[error("equation sides are not α-equal")]
    NotTrivial,
    #[error("literal is not flex-rigid")]
    NotFlexRigid,
    #[error("bad binding: {0}")]
    BadBinding(String),
    #[error("atom is not an equation between propositions")]
    NotPropEquation,
    #[error("atom has no top-level connective")]
    NoConnective,
    #[error(transparent)]
    Type(#[from] TypeError),
}

pub type RuleResult<T> = Result<T, RuleError>;

/// Rule labels as they appear in derivation tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Res,
    Dec,
    Solve,
    Triv,
    FlexRig,
    Fac,
    Equiv,
    Cnf,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Res,
        Rule::Dec,
        Rule::Solve,
        Rule::Triv,
        Rule::FlexRig,
        Rule::Fac,
        Rule::Equiv,
        Rule::Cnf,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Rule::Res => "Res",
            Rule::Dec => "Dec",
            Rule::Solve => "Solve",
            Rule::Triv => "Triv",
            Rule::FlexRig => "FlexRig",
            Rule::Fac => "Fac",
            Rule::Equiv => "Equiv",
            Rule::Cnf => "Cnf",
        }
    }

    pub fn premise_count(self) -> usize {
        if self == Rule::Res {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// The three readings of the `Solve` label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMode {
    /// Apply `{X ↦ u}` and delete the solved literal.
    Drop,
    /// Apply `{X ↦ u}` and keep the instantiated literal.
    Keep,
    /// Replace `s = X` and `X = u` by `s = u`.
    Chain,
}

impl SolveMode {
    /// Order in which the checker tries the readings.
    pub const ORDER: [SolveMode; 3] = [SolveMode::Drop, SolveMode::Keep, SolveMode::Chain];
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveMode::Drop => "drop",
            SolveMode::Keep => "keep",
            SolveMode::Chain => "chain",
        })
    }
}

/// One concrete rule instance and its conclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    pub premises: Vec<String>,
    /// Literal positions, 0-based, in premise order.
    pub positions: Vec<usize>,
    pub binding: Option<(Var, Term)>,
    pub mode: Option<SolveMode>,
    pub results: Vec<Clause>,
}

fn lit_at(c: &Clause, i: usize) -> RuleResult<&Literal> {
    c.literal(i).ok_or(RuleError::IndexOutOfRange {
        index: i,
        len: c.len(),
    })
}

fn negative_equation(c: &Clause, i: usize) -> RuleResult<(&Term, &Term)> {
    let lit = lit_at(c, i)?;
    if lit.is_positive() {
        return Err(RuleError::PositiveLiteral);
    }
    lit.atom().as_equation().ok_or(RuleError::NotEquation)
}

/// `[a]^T ∨ C`, `[b]^F ∨ D`  ⟹  `C ∨ D' ∨ [a = b']^F` with `D` renamed apart.
pub fn resolve(c: &Clause, i: usize, d: &Clause, j: usize) -> RuleResult<Clause> {
    let li = lit_at(c, i)?;
    lit_at(d, j)?;
    let renamed = rename_apart(d, &c.var_names()).clause;
    let lj = &renamed.literals()[j];
    if li.polarity() == lj.polarity() {
        return Err(RuleError::SamePolarity);
    }
    let constraint = Literal::disequation(li.atom().clone(), lj.atom().clone())?;
    let mut lits = c.without(i);
    lits.extend(renamed.without(j));
    lits.push(constraint);
    Ok(Clause::new(lits))
}

/// `C ∨ [h(A1..An) = h(V1..Vn)]^F`  ⟹  `C ∨ [A1 = V1]^F ∨ … ∨ [An = Vn]^F`.
pub fn decompose(c: &Clause, i: usize) -> RuleResult<Clause> {
    let (l, r) = negative_equation(c, i)?;
    let (lh, largs) = l.strip_app();
    let (rh, rargs) = r.strip_app();
    match (lh, rh) {
        (Term::Var(_), _) | (_, Term::Var(_)) => return Err(RuleError::Flex),
        (Term::Const(a), Term::Const(b)) if a != b => {
            return Err(RuleError::Clash {
                left: describe_head(a),
                right: describe_head(b),
            })
        }
        (Term::Const(_), Term::Const(_)) => {}
        _ => return Err(RuleError::NotRigid),
    }
    if largs.len() != rargs.len() {
        return Err(RuleError::ArityMismatch);
    }
    let parts = largs
        .into_iter()
        .zip(rargs)
        .map(|(a, v)| Literal::disequation(a.clone(), v.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(c.splice(i, parts))
}

fn describe_head(c: &Const) -> String {
    if c.is_eq() {
        let dom = c.ty.uncurry().0.into_iter().next().expect("= is binary");
        format!("=_{dom}")
    } else {
        c.name.to_string()
    }
}

/// The binding `X ↦ u` read off a negative literal `X = u` or `u = X`.
pub fn solve_binding(c: &Clause, i: usize) -> RuleResult<(Var, Term)> {
    let (l, r) = negative_equation(c, i)?;
    if let Some(x) = l.as_var() {
        if !r.occurs(x) {
            return Ok((x.clone(), r.clone()));
        }
    }
    if let Some(y) = r.as_var() {
        if !l.occurs(y) {
            return Ok((y.clone(), l.clone()));
        }
    }
    match (l.as_var(), r.as_var()) {
        (Some(x), _) | (_, Some(x)) => Err(RuleError::OccursCheck(x.name.to_string())),
        _ => Err(RuleError::NotSolvable),
    }
}

/// Solves literal `i` by substitution, keeping or deleting the solved literal.
pub fn solve_subst(c: &Clause, i: usize, keep: bool) -> RuleResult<Clause> {
    let (x, u) = solve_binding(c, i)?;
    let sigma = Substitution::singleton(x, u)?;
    let inst = c.substitute(&sigma);
    Ok(if keep {
        inst
    } else {
        Clause::new(inst.without(i))
    })
}

/// `C ∨ [s = X]^F ∨ [X = u]^F`  ⟹  `C ∨ [s = u]^F`, without substituting.
pub fn solve_chain(c: &Clause, i: usize, j: usize) -> RuleResult<Clause> {
    if i == j {
        return Err(RuleError::IndexCollision);
    }
    let (s, x1) = negative_equation(c, i)?;
    let (x2, u) = negative_equation(c, j)?;
    match (x1.as_var(), x2.as_var()) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Err(RuleError::ChainMismatch),
    }
    let joined = Literal::disequation(s.clone(), u.clone())?;
    let lits = c
        .literals()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(k, l)| if k == i { joined.clone() } else { l.clone() })
        .collect();
    Ok(Clause::new(lits))
}

/// Removes one negative literal `[t = t]^F`.
pub fn trivial(c: &Clause, i: usize) -> RuleResult<Clause> {
    let (l, r) = negative_equation(c, i)?;
    if l != r {
        return Err(RuleError::NotTrivial);
    }
    Ok(Clause::new(c.without(i)))
}

/// The flex variable and rigid head of a flex-rigid negative literal.
pub fn flex_rigid_pair(c: &Clause, i: usize) -> RuleResult<(Var, Const)> {
    let (l, r) = negative_equation(c, i)?;
    match (l.strip_app().0, r.strip_app().0) {
        (Term::Var(f), Term::Const(h)) | (Term::Const(h), Term::Var(f)) => {
            Ok((f.clone(), h.clone()))
        }
        _ => Err(RuleError::NotFlexRigid),
    }
}

/// Records `[F = binding]^F` for a flex-rigid literal; no substitution.
///
/// The binding must be `λy1..yn. k(G1(w1), …, Gm(wm))` where `k` is the
/// rigid head (imitation) or some `yj` (projection), the `Gk` are distinct
/// variables new to the clause, and every argument in `wk` is a bound `yj`
/// or a free variable of literal `i`.
pub fn flex_rigid(c: &Clause, i: usize, binding: &Term) -> RuleResult<Clause> {
    let (flex, head) = flex_rigid_pair(c, i)?;
    check_binding(c, i, &flex, &head, binding)?;
    let constraint = Literal::disequation(Term::Var(flex), binding.clone())?;
    let mut lits = c.literals().to_vec();
    lits.push(constraint);
    Ok(Clause::new(lits))
}

fn check_binding(c: &Clause, i: usize, flex: &Var, head: &Const, binding: &Term) -> RuleResult<()> {
    let bad = |m: &str| Err(RuleError::BadBinding(m.to_string()));
    let ty = binding.type_of()?;
    if ty != flex.ty {
        return bad(&format!("type {ty} differs from {}", flex.ty));
    }
    if !binding.is_beta_normal() || !binding.is_closed() {
        return bad("binding must be closed and β-normal");
    }
    let n = flex.ty.arity();
    let mut body = binding;
    for _ in 0..n {
        match body {
            Term::Lam(_, b) => body = b,
            _ => return bad("binding must abstract every argument of the flex variable"),
        }
    }
    let (bhead, args) = body.strip_app();
    match bhead {
        Term::Const(k) if k == head => {}
        Term::Bound(k, _) if (*k as usize) < n => {}
        _ => return bad("head is neither the rigid head nor a bound argument"),
    }
    let clause_vars = c.var_names();
    let lit_vars: HashSet<Var> = c.literals()[i].atom().free_vars().into_iter().collect();
    let mut helpers = HashSet::new();
    for arg in args {
        let (ghead, wargs) = arg.strip_app();
        let Term::Var(g) = ghead else {
            return bad("argument is not headed by a helper variable");
        };
        if clause_vars.contains(&*g.name) || !helpers.insert(g.name.clone()) {
            return bad(&format!("helper `{}` is not fresh", g.name));
        }
        for w in wargs {
            let ok = match w {
                Term::Bound(k, _) => (*k as usize) < n,
                Term::Var(v) => lit_vars.contains(v),
                _ => false,
            };
            if !ok {
                return bad("helper arguments must be bound or literal variables");
            }
        }
    }
    Ok(())
}

/// Options for [`enumerate_bindings`].
#[derive(Clone, Debug, Default)]
pub struct BindingOptions {
    /// Let helpers also take free variables of the literal as arguments
    /// (any subsequence), as in `X ↦ f(H(X))`.
    pub free_var_args: bool,
}

/// Imitation and projection bindings for the flex variable of literal `i`,
/// with one rigid layer and fresh helpers.
pub fn enumerate_bindings(c: &Clause, i: usize, opts: &BindingOptions) -> RuleResult<Vec<Term>> {
    let (flex, head) = flex_rigid_pair(c, i)?;
    let (arg_tys, base) = flex.ty.uncurry();
    let mut avoid = c.var_names();
    let ys: Vec<Var> = arg_tys
        .iter()
        .map(|t| fresh_var("Y", t.clone(), &mut avoid))
        .collect();
    let lit_vars = c.literals()[i].atom().free_vars();

    let mut wbars: Vec<Vec<Var>> = Vec::new();
    if opts.free_var_args {
        for mask in 0..(1u32 << lit_vars.len().min(16)) {
            let mut w = ys.clone();
            w.extend(
                lit_vars
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, v)| v.clone()),
            );
            wbars.push(w);
        }
    } else {
        wbars.push(ys.clone());
    }

    let mut heads: Vec<(Term, SimpleType)> = vec![(Term::Const(head.clone()), head.ty.clone())];
    heads.extend(ys.iter().map(|y| (Term::Var(y.clone()), y.ty.clone())));

    let mut out = Vec::new();
    for (h, hty) in heads {
        let (hargs, hbase) = hty.uncurry();
        if hbase != base {
            continue;
        }
        // Cartesian product over argument positions; each position picks a wbar.
        let mut partial: Vec<(Term, HashSet<String>)> = vec![(h.clone(), avoid.clone())];
        for aty in &hargs {
            let mut next = Vec::new();
            for (t, used) in &partial {
                for w in &wbars {
                    let mut used = used.clone();
                    let gty = SimpleType::curried(w.iter().map(|v| v.ty.clone()), aty.clone());
                    let g = fresh_var("H", gty, &mut used);
                    let garg = Term::apply(Term::Var(g), w.iter().cloned().map(Term::Var))?;
                    next.push((Term::app(t.clone(), garg)?, used));
                }
            }
            partial = next;
        }
        for (body, _) in partial {
            let bound = ys
                .iter()
                .rev()
                .fold(body, |acc, y| Term::lam_with_hint("Y", y, &acc));
            out.push(bound);
        }
    }
    Ok(out)
}

/// `[a]^p ∨ [b]^p ∨ C`  ⟹  `[a]^p ∨ [a = b]^F ∨ C` (literal `j` replaced).
pub fn factor(c: &Clause, i: usize, j: usize) -> RuleResult<Clause> {
    if i == j {
        return Err(RuleError::IndexCollision);
    }
    let li = lit_at(c, i)?;
    let lj = lit_at(c, j)?;
    if li.polarity() != lj.polarity() {
        return Err(RuleError::PolarityMismatch);
    }
    let constraint = Literal::disequation(li.atom().clone(), lj.atom().clone())?;
    Ok(c.splice(j, vec![constraint]))
}

/// `[P =_o Q]^F`  ⟹  `[(P ∧ Q) ∨ (¬P ∧ ¬Q)]^F`.
pub fn equiv(c: &Clause, i: usize) -> RuleResult<Clause> {
    let (p, q) = negative_equation(c, i).map_err(|e| match e {
        RuleError::NotEquation => RuleError::NotPropEquation,
        e => e,
    })?;
    if p.type_of()? != SimpleType::Prop {
        return Err(RuleError::NotPropEquation);
    }
    let both = Term::conjunction(p.clone(), q.clone())?;
    let neither = Term::conjunction(Term::negation(p.clone())?, Term::negation(q.clone())?)?;
    let lit = Literal::negative(Term::disjunction(both, neither)?)?;
    Ok(c.splice(i, vec![lit]))
}

/// One clausification step on the top connective of literal `i`.
pub fn cnf_step(c: &Clause, i: usize) -> RuleResult<Vec<Clause>> {
    let lit = lit_at(c, i)?;
    let atom = lit.atom();
    let pol = lit.polarity();
    let mk = |t: &Term, p: Polarity| Literal::new(t.clone(), p);
    use Polarity::{Negative as F, Positive as T};
    if let Some((a, b)) = atom.as_disjunction() {
        return Ok(match pol {
            F => vec![c.splice(i, vec![mk(a, F)?]), c.splice(i, vec![mk(b, F)?])],
            T => vec![c.splice(i, vec![mk(a, T)?, mk(b, T)?])],
        });
    }
    if let Some((a, b)) = atom.as_conjunction() {
        return Ok(match pol {
            F => vec![c.splice(i, vec![mk(a, F)?, mk(b, F)?])],
            T => vec![c.splice(i, vec![mk(a, T)?]), c.splice(i, vec![mk(b, T)?])],
        });
    }
    if let Some(a) = atom.as_negation() {
        return Ok(vec![c.splice(i, vec![mk(a, pol.flip())?])]);
    }
    Err(RuleError::NoConnective)
}

/// Clausifies until no literal has a top-level connective.
pub fn cnf_all(c: &Clause) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut stack = vec![c.clone()];
    while let Some(cur) = stack.pop() {
        match cur
            .literals()
            .iter()
            .position(|l| l.atom().has_top_connective())
        {
            None => out.push(cur),
            Some(i) => {
                let next = cnf_step(&cur, i).expect("literal has a top connective");
                stack.extend(next.into_iter().rev());
            }
        }
    }
    out
}

pub fn has_connective_literal(c: &Clause) -> bool {
    c.literals().iter().any(|l| l.atom().has_top_connective())
}
