//! Recursive-descent parser over the token stream.

use super::ast::{ClauseExpr, Expr, LitExpr, LogicalOp};
use super::lexer::{tokenize, Pos, Spanned, Tok};
use super::ParseError;
use crate::clause::Polarity;
use crate::types::SimpleType;

pub struct Parser {
    toks: Vec<Spanned>,
    idx: usize,
    end: Pos,
}

impl Parser {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        let toks = tokenize(text)?;
        let lines = text.lines().count();
        let end = Pos {
            line: lines.max(1),
            col: text.lines().last().map_or(1, |l| l.chars().count() + 1),
        };
        Ok(Parser { toks, idx: 0, end })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|s| &s.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.idx + k).map(|s| &s.tok)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.idx).map_or(self.end, |s| s.pos)
    }

    pub fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|s| s.tok.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.pos(), msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.idx += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub fn int(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.idx += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("number")),
        }
    }

    pub fn string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.idx += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("string literal")),
        }
    }

    /// `type := atom ('>' type)?`, `atom := i | o | '(' type ')'`.
    pub fn ty(&mut self) -> Result<SimpleType, ParseError> {
        let dom = self.ty_atom()?;
        if self.eat(&Tok::Gt) {
            Ok(SimpleType::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn ty_atom(&mut self) -> Result<SimpleType, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "i" => {
                self.idx += 1;
                Ok(SimpleType::Ind)
            }
            Some(Tok::Ident(s)) if s == "o" => {
                self.idx += 1;
                Ok(SimpleType::Prop)
            }
            Some(Tok::LParen) => {
                self.idx += 1;
                let t = self.ty()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("type")),
        }
    }

    pub fn formula(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::OrO) {
            let rhs = self.conj()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.eqn()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.eqn()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn eqn(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.unary()?;
            Ok(Expr::Eq(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Tilde) {
            Ok(Expr::Not(Box::new(self.unary()?)))
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while self.peek() == Some(&Tok::LParen) {
            self.idx += 1;
            let mut args = vec![self.formula()?];
            while self.eat(&Tok::Comma) {
                args.push(self.formula()?);
            }
            self.expect(&Tok::RParen)?;
            e = match e {
                Expr::App(h, mut prev) => {
                    prev.extend(args);
                    Expr::App(h, prev)
                }
                other => Expr::App(Box::new(other), args),
            };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                let op = match (self.peek_at(1), self.peek_at(2)) {
                    (Some(Tok::Eq), Some(Tok::RParen)) => Some(LogicalOp::Eq),
                    (Some(Tok::Amp), Some(Tok::RParen)) => Some(LogicalOp::And),
                    (Some(Tok::OrO), Some(Tok::RParen)) => Some(LogicalOp::Or),
                    (Some(Tok::Tilde), Some(Tok::RParen)) => Some(LogicalOp::Not),
                    _ => None,
                };
                if let Some(op) = op {
                    self.idx += 3;
                    return Ok(Expr::Op(op));
                }
                self.idx += 1;
                let e = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Caret) => {
                self.idx += 1;
                let name = self.ident()?;
                self.expect(&Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(&Tok::Dot)?;
                let body = self.formula()?;
                Ok(Expr::Lam {
                    name,
                    ty,
                    body: Box::new(body),
                })
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident()?;
                let ann = if self.peek() == Some(&Tok::Colon) {
                    self.idx += 1;
                    Some(self.ty()?)
                } else {
                    None
                };
                Ok(Expr::Name { name, ann })
            }
            _ => Err(self.unexpected("term")),
        }
    }

    /// `+(formula)` or `-(formula)`.
    pub fn literal(&mut self) -> Result<LitExpr, ParseError> {
        let polarity = match self.peek() {
            Some(Tok::Plus) => Polarity::Positive,
            Some(Tok::Minus) => Polarity::Negative,
            _ => return Err(self.unexpected("`+(` or `-(`")),
        };
        self.idx += 1;
        self.expect(&Tok::LParen)?;
        let formula = self.formula()?;
        self.expect(&Tok::RParen)?;
        Ok(LitExpr { polarity, formula })
    }

    /// Literals separated by `|`, or `empty` / `[]`.
    pub fn clause(&mut self) -> Result<ClauseExpr, ParseError> {
        if self.is_keyword("empty") {
            self.idx += 1;
            return Ok(ClauseExpr::default());
        }
        if self.peek() == Some(&Tok::LBracket) && self.peek_at(1) == Some(&Tok::RBracket) {
            self.idx += 2;
            return Ok(ClauseExpr::default());
        }
        let mut literals = vec![self.literal()?];
        while self.eat(&Tok::Bar) {
            literals.push(self.literal()?);
        }
        Ok(ClauseExpr { literals })
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}
