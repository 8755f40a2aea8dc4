//! Problem files: constant declarations followed by named input clauses.
//!
//! ```text
//! const f : i > i.
//! clause C1 : +(g(f(a)) = a).
//! ```

use crate::clause::Clause;
use crate::signature::Signature;
use crate::syntax::{
    elaborate_clause, print_clause_expr, quote_clause_reparsable, ParseError, Parser, Tok,
};

pub const COUNTEREXAMPLE: &str = include_str!("../data/counterexample.erp");
pub const GROUND_INSTANCE: &str = include_str!("../data/ground_instance.erp");
pub const PROP_PAIR: &str = include_str!("../data/prop_pair.erp");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub signature: Signature,
    pub clauses: Vec<(String, Clause)>,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, ParseError> {
        let mut p = Parser::new(text)?;
        let mut signature = Signature::new();
        let mut clauses: Vec<(String, Clause)> = Vec::new();
        while !p.at_end() {
            let pos = p.pos();
            if p.is_keyword("const") {
                p.bump();
                let name = p.ident()?;
                p.expect(&Tok::Colon)?;
                let ty = p.ty()?;
                p.expect(&Tok::Dot)?;
                signature
                    .declare(&name, ty)
                    .map_err(|e| ParseError::at(pos, e.to_string()))?;
            } else if p.is_keyword("clause") {
                p.bump();
                let id = p.ident()?;
                p.expect(&Tok::Colon)?;
                let c = p.clause()?;
                p.expect(&Tok::Dot)?;
                if clauses.iter().any(|(k, _)| *k == id) {
                    return Err(ParseError::at(pos, format!("duplicate clause id `{id}`")));
                }
                let clause =
                    elaborate_clause(&c, &signature).map_err(|m| ParseError::at(pos, m))?;
                clauses.push((id, clause));
            } else {
                return Err(p.error("expected `const` or `clause`"));
            }
        }
        Ok(Problem { signature, clauses })
    }

    /// `{g(f(a)) = a, f(g(X)) != X}` over `{a, f, g}`.
    pub fn counterexample() -> Problem {
        Problem::parse(COUNTEREXAMPLE).expect("bundled problem parses")
    }

    pub fn ground_instance() -> Problem {
        Problem::parse(GROUND_INSTANCE).expect("bundled problem parses")
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|(k, _)| k == id).map(|(_, c)| c)
    }

    /// Renders the problem in the file syntax.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, ty) in self.signature.iter() {
            out.push_str(&format!("const {name} : {ty}.\n"));
        }
        for (id, c) in &self.clauses {
            let q = quote_clause_reparsable(c, &self.signature);
            out.push_str(&format!("clause {id} : {}.\n", print_clause_expr(&q)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::clause_variant_equal;

    #[test]
    fn bundled_counterexample() {
        let p = Problem::counterexample();
        assert_eq!(p.signature, Signature::counterexample());
        assert_eq!(p.clauses.len(), 2);
        assert_eq!(p.clause("C1").unwrap().to_string(), "+(g(f(a)) = a)");
        assert_eq!(p.clause("C2").unwrap().to_string(), "-(f(g(X)) = X)");
    }

    #[test]
    fn text_round_trip() {
        for text in [COUNTEREXAMPLE, GROUND_INSTANCE, PROP_PAIR] {
            let p = Problem::parse(text).unwrap();
            let q = Problem::parse(&p.to_text()).unwrap();
            assert_eq!(p.signature, q.signature);
            for ((a, c), (b, d)) in p.clauses.iter().zip(&q.clauses) {
                assert_eq!(a, b);
                assert!(clause_variant_equal(c, d));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Problem::parse("const a : i.\nclause C1 : +(b = a).").is_err());
        assert!(Problem::parse("const = : i.").is_err());
        assert!(Problem::parse("clause C1 : +(p)").is_err());
        let e = Problem::parse("const a : i.\nfoo").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(
            Problem::parse("const a : i.\nclause C1 : -(a = a).\nclause C1 : -(a = a).").is_err()
        );
    }
}
