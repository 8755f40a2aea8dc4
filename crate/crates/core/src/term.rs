//! Simply-typed λ-terms in locally nameless form.
//!
//! Free variables and constants are named; bound variables are de Bruijn
//! indices carrying their type. A binder keeps its source name only as a
//! printing hint, so structural equality on [`Term`] is α-equivalence.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::types::SimpleType;

/// Name of the equality constant (one instance per type).
pub const EQ: &str = "=";
pub const NOT: &str = "~";
pub const AND: &str = "&";
pub const OR: &str = "|";

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("cannot apply `{function}` of type {ty}: not a function")]
    NotAFunction { function: String, ty: SimpleType },
    #[error("argument `{argument}` has type {found}, expected {expected}")]
    ArgumentMismatch {
        argument: String,
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("equation sides have different types {left} and {right}")]
    EquationMismatch { left: SimpleType, right: SimpleType },
    #[error("expected a proposition, found type {0}")]
    NotProposition(SimpleType),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("dangling bound variable index {0}")]
    DanglingBound(u32),
    #[error("bound variable {index} annotated {annotated}, binder has {binder}")]
    BoundMismatch {
        index: u32,
        annotated: SimpleType,
        binder: SimpleType,
    },
    #[error("binding for {var} has type {found}, expected {expected}")]
    BindingMismatch {
        var: String,
        expected: SimpleType,
        found: SimpleType,
    },
}

/// A free variable. Identity is name plus type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Arc<str>,
    pub ty: SimpleType,
}

impl Var {
    pub fn new(name: impl Into<Arc<str>>, ty: SimpleType) -> Self {
        Var {
            name: name.into(),
            ty,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Const {
    pub name: Arc<str>,
    pub ty: SimpleType,
}

impl Const {
    pub fn new(name: impl Into<Arc<str>>, ty: SimpleType) -> Self {
        Const {
            name: name.into(),
            ty,
        }
    }

    /// `=` at type `ty`, of type `ty > ty > o`.
    pub fn eq(ty: SimpleType) -> Self {
        Const::new(
            EQ,
            SimpleType::arrow(ty.clone(), SimpleType::arrow(ty, SimpleType::Prop)),
        )
    }

    pub fn not() -> Self {
        Const::new(NOT, SimpleType::arrow(SimpleType::Prop, SimpleType::Prop))
    }

    pub fn and() -> Self {
        Const::new(AND, binary_prop())
    }

    pub fn or() -> Self {
        Const::new(OR, binary_prop())
    }

    pub fn is_logical(&self) -> bool {
        is_logical_name(&self.name)
    }

    pub fn is_eq(&self) -> bool {
        &*self.name == EQ
    }

    pub fn is_connective(&self) -> bool {
        matches!(&*self.name, NOT | AND | OR)
    }
}

fn binary_prop() -> SimpleType {
    SimpleType::arrow(
        SimpleType::Prop,
        SimpleType::arrow(SimpleType::Prop, SimpleType::Prop),
    )
}

pub fn is_logical_name(name: &str) -> bool {
    matches!(name, EQ | NOT | AND | OR)
}

/// Binder of a λ-abstraction. Only the type takes part in equality.
#[derive(Clone, Debug)]
pub struct Binder {
    pub hint: Arc<str>,
    pub ty: SimpleType,
}

impl PartialEq for Binder {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ty.hash(state);
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Var),
    Const(Const),
    /// de Bruijn index, annotated with the binder's type.
    Bound(u32, SimpleType),
    App(Arc<Term>, Arc<Term>),
    Lam(Binder, Arc<Term>),
}

impl From<Var> for Term {
    fn from(v: Var) -> Self {
        Term::Var(v)
    }
}

impl From<Const> for Term {
    fn from(c: Const) -> Self {
        Term::Const(c)
    }
}

impl Term {
    pub fn var(name: impl Into<Arc<str>>, ty: SimpleType) -> Term {
        Term::Var(Var::new(name, ty))
    }

    pub fn constant(name: impl Into<Arc<str>>, ty: SimpleType) -> Term {
        Term::Const(Const::new(name, ty))
    }

    /// Type-checked application, β-normalized when `f` is an abstraction.
    pub fn app(f: Term, arg: Term) -> Result<Term, TypeError> {
        let fty = f.type_of()?;
        let aty = arg.type_of()?;
        match &fty {
            SimpleType::Arrow(d, _) if **d == aty => {}
            SimpleType::Arrow(d, _) => {
                return Err(TypeError::ArgumentMismatch {
                    argument: arg.to_string(),
                    expected: (**d).clone(),
                    found: aty,
                })
            }
            _ => {
                return Err(TypeError::NotAFunction {
                    function: f.to_string(),
                    ty: fty,
                })
            }
        }
        Ok(match f {
            Term::Lam(_, body) => instantiate(&body, &arg).beta_normalize(),
            f => Term::App(Arc::new(f), Arc::new(arg)),
        })
    }

    /// Applies `f` to each argument in turn.
    pub fn apply<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Result<Term, TypeError> {
        args.into_iter().try_fold(f, Term::app)
    }

    /// `λ var. body`, abstracting every free occurrence of `var`.
    pub fn lam(var: &Var, body: &Term) -> Term {
        Term::Lam(
            Binder {
                hint: var.name.clone(),
                ty: var.ty.clone(),
            },
            Arc::new(abstract_var(body, var, 0)),
        )
    }

    /// `λ. body` abstracting `var`, printed with the binder name `hint`.
    pub fn lam_with_hint(hint: &str, var: &Var, body: &Term) -> Term {
        Term::Lam(
            Binder {
                hint: hint.into(),
                ty: var.ty.clone(),
            },
            Arc::new(abstract_var(body, var, 0)),
        )
    }

    pub fn equation(left: Term, right: Term) -> Result<Term, TypeError> {
        let lt = left.type_of()?;
        let rt = right.type_of()?;
        if lt != rt {
            return Err(TypeError::EquationMismatch {
                left: lt,
                right: rt,
            });
        }
        Term::apply(Term::Const(Const::eq(lt)), [left, right])
    }

    pub fn negation(t: Term) -> Result<Term, TypeError> {
        Term::app(Term::Const(Const::not()), t)
    }

    pub fn conjunction(a: Term, b: Term) -> Result<Term, TypeError> {
        Term::apply(Term::Const(Const::and()), [a, b])
    }

    pub fn disjunction(a: Term, b: Term) -> Result<Term, TypeError> {
        Term::apply(Term::Const(Const::or()), [a, b])
    }

    /// The unique type of a closed-over-binders term.
    pub fn type_of(&self) -> Result<SimpleType, TypeError> {
        let mut ctx = Vec::new();
        self.type_in(&mut ctx)
    }

    fn type_in(&self, ctx: &mut Vec<SimpleType>) -> Result<SimpleType, TypeError> {
        match self {
            Term::Var(v) => Ok(v.ty.clone()),
            Term::Const(c) => Ok(c.ty.clone()),
            Term::Bound(i, ty) => {
                let idx = ctx.len().checked_sub(*i as usize + 1);
                match idx.map(|k| &ctx[k]) {
                    None => Err(TypeError::DanglingBound(*i)),
                    Some(b) if b != ty => Err(TypeError::BoundMismatch {
                        index: *i,
                        annotated: ty.clone(),
                        binder: b.clone(),
                    }),
                    Some(_) => Ok(ty.clone()),
                }
            }
            Term::App(f, a) => {
                let fty = f.type_in(ctx)?;
                let aty = a.type_in(ctx)?;
                match fty {
                    SimpleType::Arrow(d, c) if *d == aty => Ok((*c).clone()),
                    SimpleType::Arrow(d, _) => Err(TypeError::ArgumentMismatch {
                        argument: a.to_string(),
                        expected: (*d).clone(),
                        found: aty,
                    }),
                    ty => Err(TypeError::NotAFunction {
                        function: f.to_string(),
                        ty,
                    }),
                }
            }
            Term::Lam(b, body) => {
                ctx.push(b.ty.clone());
                let bty = body.type_in(ctx);
                ctx.pop();
                Ok(SimpleType::arrow(b.ty.clone(), bty?))
            }
        }
    }

    /// Full β-normal form.
    pub fn beta_normalize(&self) -> Term {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Bound(..) => self.clone(),
            Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(body.beta_normalize())),
            Term::App(f, a) => {
                let f = f.beta_normalize();
                let a = a.beta_normalize();
                match f {
                    Term::Lam(_, body) => instantiate(&body, &a).beta_normalize(),
                    f => Term::App(Arc::new(f), Arc::new(a)),
                }
            }
        }
    }

    pub fn is_beta_normal(&self) -> bool {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Bound(..) => true,
            Term::Lam(_, body) => body.is_beta_normal(),
            Term::App(f, a) => {
                !matches!(**f, Term::Lam(..)) && f.is_beta_normal() && a.is_beta_normal()
            }
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_vars(&mut out, &mut seen);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>, seen: &mut HashSet<Var>) {
        match self {
            Term::Var(v) => {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) | Term::Bound(..) => {}
            Term::App(f, a) => {
                f.collect_vars(out, seen);
                a.collect_vars(out, seen);
            }
            Term::Lam(_, body) => body.collect_vars(out, seen),
        }
    }

    pub fn occurs(&self, var: &Var) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::Const(_) | Term::Bound(..) => false,
            Term::App(f, a) => f.occurs(var) || a.occurs(var),
            Term::Lam(_, body) => body.occurs(var),
        }
    }

    /// Simultaneous replacement of free variables; images must be closed
    /// over binders (they are substituted under λ without shifting).
    pub(crate) fn replace_vars(&self, f: &impl Fn(&Var) -> Option<Term>) -> Term {
        match self {
            Term::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Term::Const(_) | Term::Bound(..) => self.clone(),
            Term::App(g, a) => Term::App(Arc::new(g.replace_vars(f)), Arc::new(a.replace_vars(f))),
            Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(body.replace_vars(f))),
        }
    }

    /// Head and argument spine of an application.
    pub fn strip_app(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// `(left, right)` when this is `left = right` at any type.
    pub fn as_equation(&self) -> Option<(&Term, &Term)> {
        match self.strip_app() {
            (Term::Const(c), args) if c.is_eq() && args.len() == 2 => Some((args[0], args[1])),
            _ => None,
        }
    }

    pub fn as_negation(&self) -> Option<&Term> {
        match self.strip_app() {
            (Term::Const(c), args) if &*c.name == NOT && args.len() == 1 => Some(args[0]),
            _ => None,
        }
    }

    pub fn as_conjunction(&self) -> Option<(&Term, &Term)> {
        self.as_binary(AND)
    }

    pub fn as_disjunction(&self) -> Option<(&Term, &Term)> {
        self.as_binary(OR)
    }

    fn as_binary(&self, name: &str) -> Option<(&Term, &Term)> {
        match self.strip_app() {
            (Term::Const(c), args) if &*c.name == name && args.len() == 2 => {
                Some((args[0], args[1]))
            }
            _ => None,
        }
    }

    /// True when the top symbol is a fully applied `~`, `&` or `|`.
    pub fn has_top_connective(&self) -> bool {
        self.as_negation().is_some()
            || self.as_conjunction().is_some()
            || self.as_disjunction().is_some()
    }

    /// Number of connective occurrences anywhere in the term.
    pub fn connective_count(&self) -> usize {
        match self {
            Term::Const(c) if c.is_connective() => 1,
            Term::App(f, a) => f.connective_count() + a.connective_count(),
            Term::Lam(_, b) => b.connective_count(),
            _ => 0,
        }
    }

    /// Symbol count: one per variable, constant, bound index and binder.
    pub fn weight(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Bound(..) => 1,
            Term::App(f, a) => f.weight() + a.weight(),
            Term::Lam(_, b) => 1 + b.weight(),
        }
    }

    /// Free variable heading this term after stripping any λ-prefix.
    pub fn flex_head(&self) -> Option<&Var> {
        let mut cur = self;
        while let Term::Lam(_, b) = cur {
            cur = b;
        }
        match cur.strip_app().0 {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    /// True when no de Bruijn index escapes its binders.
    pub fn is_closed(&self) -> bool {
        fn go(t: &Term, depth: u32) -> bool {
            match t {
                Term::Bound(i, _) => *i < depth,
                Term::Var(_) | Term::Const(_) => true,
                Term::App(f, a) => go(f, depth) && go(a, depth),
                Term::Lam(_, b) => go(b, depth + 1),
            }
        }
        go(self, 0)
    }
}

/// Replaces free `var` by index `depth` (counting binders crossed).
fn abstract_var(t: &Term, var: &Var, depth: u32) -> Term {
    match t {
        Term::Var(v) if v == var => Term::Bound(depth, v.ty.clone()),
        Term::Var(_) | Term::Const(_) | Term::Bound(..) => t.clone(),
        Term::App(f, a) => Term::App(
            Arc::new(abstract_var(f, var, depth)),
            Arc::new(abstract_var(a, var, depth)),
        ),
        Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(abstract_var(body, var, depth + 1))),
    }
}

/// Shifts loose indices `>= cutoff` by `by`.
fn shift(t: &Term, by: u32, cutoff: u32) -> Term {
    if by == 0 {
        return t.clone();
    }
    match t {
        Term::Bound(i, ty) if *i >= cutoff => Term::Bound(i + by, ty.clone()),
        Term::Var(_) | Term::Const(_) | Term::Bound(..) => t.clone(),
        Term::App(f, a) => Term::App(
            Arc::new(shift(f, by, cutoff)),
            Arc::new(shift(a, by, cutoff)),
        ),
        Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(shift(body, by, cutoff + 1))),
    }
}

/// Substitutes `arg` for index 0 in the body of an abstraction.
pub(crate) fn instantiate(body: &Term, arg: &Term) -> Term {
    fn go(t: &Term, arg: &Term, depth: u32) -> Term {
        match t {
            Term::Bound(i, _) if *i == depth => shift(arg, depth, 0),
            Term::Bound(i, ty) if *i > depth => Term::Bound(i - 1, ty.clone()),
            Term::Var(_) | Term::Const(_) | Term::Bound(..) => t.clone(),
            Term::App(f, a) => Term::App(Arc::new(go(f, arg, depth)), Arc::new(go(a, arg, depth))),
            Term::Lam(b, body) => Term::Lam(b.clone(), Arc::new(go(body, arg, depth + 1))),
        }
    }
    go(body, arg, 0)
}

/// α-equivalence of terms (bound names are irrelevant).
pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    t == u
}
