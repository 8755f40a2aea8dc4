//! Elaboration of surface syntax into typed kernel terms.
//!
//! Free variable types are inferred by first-order unification over simple
//! types; anything left undetermined defaults to `i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::ast::{ClauseExpr, Expr, LitExpr, LogicalOp};
use crate::clause::{Clause, Literal};
use crate::signature::Signature;
use crate::term::{Const, Term, Var};
use crate::types::SimpleType;

#[derive(Clone, Debug, PartialEq, Eq)]
enum ITy {
    Meta(usize),
    Ind,
    Prop,
    Arrow(Box<ITy>, Box<ITy>),
}

impl From<&SimpleType> for ITy {
    fn from(t: &SimpleType) -> Self {
        match t {
            SimpleType::Ind => ITy::Ind,
            SimpleType::Prop => ITy::Prop,
            SimpleType::Arrow(d, c) => ITy::Arrow(Box::new((&**d).into()), Box::new((&**c).into())),
        }
    }
}

/// Variable-type context shared by all formulas of one clause.
pub struct Elaborator<'a> {
    sig: &'a Signature,
    metas: Vec<Option<ITy>>,
    vars: BTreeMap<String, ITy>,
    /// Types of `(=)` occurrences, keyed by expression address.
    op_types: HashMap<*const Expr, ITy>,
}

type ElabResult<T> = Result<T, String>;

impl<'a> Elaborator<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Elaborator {
            sig,
            metas: Vec::new(),
            vars: BTreeMap::new(),
            op_types: HashMap::new(),
        }
    }

    /// Seeds the context with variables whose types are already known.
    pub fn with_vars<I: IntoIterator<Item = Var>>(mut self, vars: I) -> Self {
        for v in vars {
            self.vars.insert(v.name.to_string(), (&v.ty).into());
        }
        self
    }

    fn fresh(&mut self) -> ITy {
        self.metas.push(None);
        ITy::Meta(self.metas.len() - 1)
    }

    fn resolve(&self, t: &ITy) -> ITy {
        match t {
            ITy::Meta(m) => match &self.metas[*m] {
                Some(b) => self.resolve(b),
                None => t.clone(),
            },
            ITy::Arrow(d, c) => ITy::Arrow(Box::new(self.resolve(d)), Box::new(self.resolve(c))),
            other => other.clone(),
        }
    }

    fn occurs(&self, m: usize, t: &ITy) -> bool {
        match self.resolve(t) {
            ITy::Meta(k) => k == m,
            ITy::Arrow(d, c) => self.occurs(m, &d) || self.occurs(m, &c),
            _ => false,
        }
    }

    fn unify(&mut self, a: &ITy, b: &ITy) -> ElabResult<()> {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            _ if a == b => Ok(()),
            (ITy::Meta(m), t) | (t, ITy::Meta(m)) => {
                if self.occurs(*m, t) {
                    return Err("cyclic type".into());
                }
                self.metas[*m] = Some(t.clone());
                Ok(())
            }
            (ITy::Arrow(d1, c1), ITy::Arrow(d2, c2)) => {
                self.unify(d1, d2)?;
                self.unify(c1, c2)
            }
            _ => Err(format!(
                "type mismatch: {} vs {}",
                self.ground(&a),
                self.ground(&b)
            )),
        }
    }

    fn ground(&self, t: &ITy) -> SimpleType {
        match self.resolve(t) {
            ITy::Meta(_) | ITy::Ind => SimpleType::Ind,
            ITy::Prop => SimpleType::Prop,
            ITy::Arrow(d, c) => SimpleType::arrow(self.ground(&d), self.ground(&c)),
        }
    }

    fn infer(&mut self, e: &Expr, env: &mut Vec<(String, SimpleType)>) -> ElabResult<ITy> {
        match e {
            Expr::Name { name, ann } => {
                let ty = if let Some((_, t)) = env.iter().rev().find(|(n, _)| n == name) {
                    ITy::from(t)
                } else if is_var_name(name) {
                    match self.vars.get(name) {
                        Some(t) => t.clone(),
                        None => {
                            let t = self.fresh();
                            self.vars.insert(name.clone(), t.clone());
                            t
                        }
                    }
                } else {
                    match self.sig.lookup(name) {
                        Some(c) => ITy::from(&c.ty),
                        None => return Err(format!("unknown constant `{name}`")),
                    }
                };
                if let Some(ann) = ann {
                    self.unify(&ty, &ann.into())?;
                }
                Ok(ty)
            }
            Expr::App(f, args) => {
                let mut fty = self.infer(f, env)?;
                for a in args {
                    let aty = self.infer(a, env)?;
                    let res = self.fresh();
                    self.unify(&fty, &ITy::Arrow(Box::new(aty), Box::new(res.clone())))
                        .map_err(|m| {
                            format!("in application of `{}`: {m}", super::print_expr(f))
                        })?;
                    fty = res;
                }
                Ok(fty)
            }
            Expr::Lam { name, ty, body } => {
                env.push((name.clone(), ty.clone()));
                let bty = self.infer(body, env);
                env.pop();
                Ok(ITy::Arrow(Box::new(ty.into()), Box::new(bty?)))
            }
            Expr::Eq(l, r) => {
                let lt = self.infer(l, env)?;
                let rt = self.infer(r, env)?;
                self.unify(&lt, &rt)
                    .map_err(|m| format!("in equation `{}`: {m}", super::print_expr(e)))?;
                Ok(ITy::Prop)
            }
            Expr::And(l, r) | Expr::Or(l, r) => {
                for side in [l, r] {
                    let t = self.infer(side, env)?;
                    self.unify(&t, &ITy::Prop)?;
                }
                Ok(ITy::Prop)
            }
            Expr::Not(t) => {
                let ty = self.infer(t, env)?;
                self.unify(&ty, &ITy::Prop)?;
                Ok(ITy::Prop)
            }
            Expr::Op(op) => Ok(match op {
                LogicalOp::Eq => {
                    let t = self.fresh();
                    self.op_types.insert(e as *const Expr, t.clone());
                    ITy::Arrow(
                        Box::new(t.clone()),
                        Box::new(ITy::Arrow(Box::new(t), Box::new(ITy::Prop))),
                    )
                }
                LogicalOp::Not => ITy::Arrow(Box::new(ITy::Prop), Box::new(ITy::Prop)),
                LogicalOp::And | LogicalOp::Or => ITy::Arrow(
                    Box::new(ITy::Prop),
                    Box::new(ITy::Arrow(Box::new(ITy::Prop), Box::new(ITy::Prop))),
                ),
            }),
        }
    }

    fn var_of(&self, name: &str) -> Var {
        Var::new(Arc::<str>::from(name), self.ground(&self.vars[name]))
    }

    /// Builds the term; bound names become placeholder variables that are
    /// abstracted on the way out of each λ.
    fn build(&self, e: &Expr, env: &mut Vec<(String, Var)>) -> ElabResult<Term> {
        match e {
            Expr::Name { name, .. } => {
                if let Some((_, v)) = env.iter().rev().find(|(n, _)| n == name) {
                    Ok(Term::Var(v.clone()))
                } else if is_var_name(name) {
                    Ok(Term::Var(self.var_of(name)))
                } else {
                    Ok(Term::Const(
                        self.sig.lookup(name).expect("checked during inference"),
                    ))
                }
            }
            Expr::App(f, args) => {
                let mut t = self.build(f, env)?;
                for a in args {
                    t = Term::app(t, self.build(a, env)?).map_err(|e| e.to_string())?;
                }
                Ok(t)
            }
            Expr::Lam { name, ty, body } => {
                let placeholder = Var::new(format!("#{}{}", name, env.len()), ty.clone());
                env.push((name.clone(), placeholder.clone()));
                let b = self.build(body, env);
                env.pop();
                Ok(Term::lam_with_hint(name, &placeholder, &b?))
            }
            Expr::Eq(l, r) => {
                Term::equation(self.build(l, env)?, self.build(r, env)?).map_err(|e| e.to_string())
            }
            Expr::And(l, r) => Term::conjunction(self.build(l, env)?, self.build(r, env)?)
                .map_err(|e| e.to_string()),
            Expr::Or(l, r) => Term::disjunction(self.build(l, env)?, self.build(r, env)?)
                .map_err(|e| e.to_string()),
            Expr::Not(t) => Term::negation(self.build(t, env)?).map_err(|e| e.to_string()),
            Expr::Op(op) => Ok(Term::Const(match op {
                LogicalOp::Eq => Const::eq(self.ground(&self.op_types[&(e as *const Expr)])),
                LogicalOp::Not => Const::not(),
                LogicalOp::And => Const::and(),
                LogicalOp::Or => Const::or(),
            })),
        }
    }

    /// Infers a formula's type without building it (stage one).
    pub fn constrain(&mut self, e: &Expr) -> ElabResult<()> {
        self.infer(e, &mut Vec::new()).map(|_| ())
    }

    /// Constrains `e` to have the type of variable `name`.
    pub fn constrain_like_var(&mut self, name: &str, e: &Expr) -> ElabResult<()> {
        let vt = match self.vars.get(name) {
            Some(t) => t.clone(),
            None => {
                let t = self.fresh();
                self.vars.insert(name.to_string(), t.clone());
                t
            }
        };
        let et = self.infer(e, &mut Vec::new())?;
        self.unify(&vt, &et)
    }

    pub fn constrain_prop(&mut self, e: &Expr) -> ElabResult<()> {
        let t = self.infer(e, &mut Vec::new())?;
        self.unify(&t, &ITy::Prop)
            .map_err(|_| format!("`{}` is not a proposition", super::print_expr(e)))
    }

    pub fn term(&self, e: &Expr) -> ElabResult<Term> {
        self.build(e, &mut Vec::new())
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.vars.contains_key(name).then(|| self.var_of(name))
    }
}

pub fn is_var_name(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

/// Elaborates a clause; variables are scoped to the clause.
pub fn elaborate_clause(c: &ClauseExpr, sig: &Signature) -> Result<Clause, String> {
    elaborate_clause_with(c, Elaborator::new(sig))
}

pub fn elaborate_clause_with(c: &ClauseExpr, mut el: Elaborator<'_>) -> Result<Clause, String> {
    for l in &c.literals {
        el.constrain_prop(&l.formula)?;
    }
    let lits = c
        .literals
        .iter()
        .map(|l: &LitExpr| {
            let atom = el.term(&l.formula)?;
            Literal::new(atom, l.polarity).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Clause::new(lits))
}
