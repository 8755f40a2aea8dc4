//! Untyped surface syntax and its printer.

use std::collections::HashSet;

use crate::clause::{fresh_name, Clause, Literal, Polarity};
use crate::term::{Term, Var, AND, EQ, NOT, OR};
use crate::types::SimpleType;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicalOp {
    Eq,
    And,
    Or,
    Not,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Variable, constant or bound name, with an optional type annotation.
    Name {
        name: String,
        ann: Option<SimpleType>,
    },
    App(Box<Expr>, Vec<Expr>),
    Lam {
        name: String,
        ty: SimpleType,
        body: Box<Expr>,
    },
    Eq(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    /// A logical constant used as a value, e.g. `(=)`.
    Op(LogicalOp),
}

impl Expr {
    pub fn name(name: impl Into<String>) -> Expr {
        Expr::Name {
            name: name.into(),
            ann: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LitExpr {
    pub polarity: Polarity,
    pub formula: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClauseExpr {
    pub literals: Vec<LitExpr>,
}

fn is_compound(e: &Expr) -> bool {
    matches!(
        e,
        Expr::Eq(..) | Expr::And(..) | Expr::Or(..) | Expr::Lam { .. }
    )
}

fn print_type_ann(ty: &SimpleType) -> String {
    if ty.is_arrow() {
        format!("({ty})")
    } else {
        ty.to_string()
    }
}

fn operand(e: &Expr) -> String {
    if is_compound(e) {
        format!("({})", print_expr(e))
    } else {
        print_expr(e)
    }
}

pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Name { name, ann: None } => name.clone(),
        Expr::Name {
            name,
            ann: Some(ty),
        } => format!("{name}:{}", print_type_ann(ty)),
        Expr::App(head, args) => {
            let args: Vec<String> = args.iter().map(print_expr).collect();
            format!("{}({})", operand(head), args.join(", "))
        }
        Expr::Lam { name, ty, body } => {
            format!("^{name}:{}. {}", print_type_ann(ty), print_expr(body))
        }
        Expr::Eq(l, r) => format!("{} = {}", operand(l), operand(r)),
        Expr::And(l, r) => format!("{} & {}", operand(l), operand(r)),
        Expr::Or(l, r) => format!("{} |o| {}", operand(l), operand(r)),
        Expr::Not(t) => format!("~{}", operand(t)),
        Expr::Op(op) => match op {
            LogicalOp::Eq => "(=)".into(),
            LogicalOp::And => "(&)".into(),
            LogicalOp::Or => "(|o|)".into(),
            LogicalOp::Not => "(~)".into(),
        },
    }
}

pub fn print_lit_expr(l: &LitExpr) -> String {
    let sign = if l.polarity.is_positive() { '+' } else { '-' };
    format!("{sign}({})", print_expr(&l.formula))
}

/// Literals joined by `|`; the empty clause prints as `empty`.
pub fn print_clause_expr(c: &ClauseExpr) -> String {
    if c.literals.is_empty() {
        return "empty".into();
    }
    c.literals
        .iter()
        .map(print_lit_expr)
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Converts a kernel term back to surface syntax. Variables in `annotate`
/// carry explicit type annotations.
pub fn quote(t: &Term, annotate: &HashSet<Var>) -> Expr {
    let mut used: HashSet<String> = t.free_vars().iter().map(|v| v.name.to_string()).collect();
    let mut env = Vec::new();
    quote_in(t, annotate, &mut env, &mut used)
}

fn quote_in(
    t: &Term,
    annotate: &HashSet<Var>,
    env: &mut Vec<String>,
    used: &mut HashSet<String>,
) -> Expr {
    match t {
        Term::Var(v) => Expr::Name {
            name: v.name.to_string(),
            ann: annotate.contains(v).then(|| v.ty.clone()),
        },
        Term::Const(c) => match &*c.name {
            EQ => Expr::Op(LogicalOp::Eq),
            AND => Expr::Op(LogicalOp::And),
            OR => Expr::Op(LogicalOp::Or),
            NOT => Expr::Op(LogicalOp::Not),
            name => Expr::name(name),
        },
        Term::Bound(i, _) => {
            let k = env.len() - 1 - *i as usize;
            Expr::name(env[k].clone())
        }
        Term::Lam(b, body) => {
            let mut name = b.hint.to_string();
            if used.contains(&name) || !name.starts_with(|c: char| c.is_ascii_uppercase()) {
                name = fresh_name(
                    if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                        &name
                    } else {
                        "Y"
                    },
                    used,
                );
            }
            used.insert(name.clone());
            env.push(name.clone());
            let body = quote_in(body, annotate, env, used);
            env.pop();
            used.remove(&name);
            Expr::Lam {
                name,
                ty: b.ty.clone(),
                body: Box::new(body),
            }
        }
        Term::App(..) => {
            let (head, args) = t.strip_app();
            let mut qargs: Vec<Expr> = args
                .iter()
                .map(|a| quote_in(a, annotate, env, used))
                .collect();
            if let Term::Const(c) = head {
                match (&*c.name, qargs.len()) {
                    (EQ, 2) => {
                        let r = qargs.pop().unwrap();
                        let l = qargs.pop().unwrap();
                        return Expr::Eq(Box::new(l), Box::new(r));
                    }
                    (AND, 2) => {
                        let r = qargs.pop().unwrap();
                        let l = qargs.pop().unwrap();
                        return Expr::And(Box::new(l), Box::new(r));
                    }
                    (OR, 2) => {
                        let r = qargs.pop().unwrap();
                        let l = qargs.pop().unwrap();
                        return Expr::Or(Box::new(l), Box::new(r));
                    }
                    (NOT, 1) => return Expr::Not(Box::new(qargs.pop().unwrap())),
                    _ => {}
                }
            }
            let head = quote_in(head, annotate, env, used);
            Expr::App(Box::new(head), qargs)
        }
    }
}

pub fn quote_literal(l: &Literal, annotate: &HashSet<Var>) -> LitExpr {
    LitExpr {
        polarity: l.polarity(),
        formula: quote(l.atom(), annotate),
    }
}

pub fn quote_clause(c: &Clause, annotate: &HashSet<Var>) -> ClauseExpr {
    ClauseExpr {
        literals: c
            .literals()
            .iter()
            .map(|l| quote_literal(l, annotate))
            .collect(),
    }
}
