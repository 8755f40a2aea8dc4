//! Surface syntax: lexer, parser, elaboration with type inference, printer.
//!
//! Terms use first-order style application `f(t)`, `^Y:i. t` for λ, `=`,
//! `&`, `|o|` (object-level disjunction) and `~`. Identifiers starting with
//! an uppercase letter are variables, lowercase ones are constants.

mod ast;
mod elab;
mod lexer;
mod parser;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub use ast::{
    print_clause_expr, print_expr, print_lit_expr, quote, quote_clause, quote_literal, ClauseExpr,
    Expr, LitExpr, LogicalOp,
};
pub use elab::{elaborate_clause, elaborate_clause_with, is_var_name, Elaborator};
pub use lexer::{Pos, Tok};
pub use parser::Parser;

use crate::clause::{clause_variant_equal, Clause, Literal};
use crate::signature::Signature;
use crate::term::{Term, Var};
use crate::types::SimpleType;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl ParseError {
    pub fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

pub fn parse_type(text: &str) -> Result<SimpleType, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.formula()?;
    p.expect_end()?;
    Ok(e)
}

pub fn parse_clause_expr(text: &str) -> Result<ClauseExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.clause()?;
    p.expect_end()?;
    Ok(c)
}

/// Parses and elaborates a single term, inferring free variable types.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let e = parse_expr(text)?;
    let mut el = Elaborator::new(sig);
    el.constrain(&e)
        .map_err(|m| ParseError::at(Pos::default(), m))?;
    el.term(&e).map_err(|m| ParseError::at(Pos::default(), m))
}

/// Parses and elaborates a clause on its own.
pub fn parse_clause_standalone(text: &str, sig: &Signature) -> Result<Clause, ParseError> {
    let c = parse_clause_expr(text)?;
    elaborate_clause(&c, sig).map_err(|m| ParseError::at(Pos { line: 1, col: 1 }, m))
}

pub fn print_term(t: &Term) -> String {
    print_expr(&quote(t, &HashSet::new()))
}

pub fn print_literal(l: &Literal) -> String {
    print_lit_expr(&quote_literal(l, &HashSet::new()))
}

/// `[]` for the empty clause, otherwise literals joined by `|`.
pub fn print_clause(c: &Clause) -> String {
    if c.is_empty() {
        return "[]".into();
    }
    print_clause_expr(&quote_clause(c, &HashSet::new()))
}

/// Surface form of `c` that elaborates back to a variant of `c`: variable
/// annotations are added only when inference alone would get a type wrong.
pub fn quote_clause_reparsable(c: &Clause, sig: &Signature) -> ClauseExpr {
    let plain = quote_clause(c, &HashSet::new());
    if let Ok(back) = elaborate_clause(&plain, sig) {
        if clause_variant_equal(&back, c) {
            return plain;
        }
    }
    let annotate: HashSet<Var> = c
        .free_vars()
        .into_iter()
        .filter(|v| v.ty != SimpleType::Ind)
        .collect();
    quote_clause(c, &annotate)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}
