//! Derivation graphs in Graphviz DOT syntax.
//!
//! Nodes are clauses (`C3: -(a = a)`), edges run from premise to
//! conclusion and carry the rule label.

use std::fmt::Write as _;

use thiserror::Error;

use crate::checker::{CheckReport, StepStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotNode {
    pub id: String,
    /// Clause text, `[]` for the empty clause.
    pub clause: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DerivationGraph {
    pub nodes: Vec<DotNode>,
    pub edges: Vec<DotEdge>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DotError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edge refers to unknown node `{0}`")]
    UnknownNode(String),
}

impl DerivationGraph {
    /// Graph of the verified part of a check report.
    pub fn from_report(report: &CheckReport) -> Self {
        let mut g = DerivationGraph::default();
        for (id, c) in &report.inputs {
            g.nodes.push(DotNode {
                id: id.clone(),
                clause: c.to_string(),
            });
        }
        for s in &report.steps {
            if !matches!(s.status, StepStatus::Verified(_)) {
                break;
            }
            let rule = format!("{}{}", s.rule, if s.starred { "*" } else { "" });
            for (id, c) in s.results.iter().zip(&s.clauses) {
                g.nodes.push(DotNode {
                    id: id.clone(),
                    clause: c.to_string(),
                });
                for p in &premises_of(report, id) {
                    g.edges.push(DotEdge {
                        from: p.clone(),
                        to: id.clone(),
                        rule: rule.clone(),
                    });
                }
            }
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph derivation {\n  node [shape=box];\n");
        for n in &self.nodes {
            let _ = writeln!(
                out,
                "  {} [label={}];",
                quote(&n.id),
                quote(&format!("{}: {}", n.id, n.clause))
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&e.from),
                quote(&e.to),
                quote(&e.rule)
            );
        }
        out.push_str("}\n");
        out
    }

    /// Reads back the subset of DOT that [`DerivationGraph::to_dot`] writes.
    pub fn parse(text: &str) -> Result<Self, DotError> {
        let mut g = DerivationGraph::default();
        let err = |line: usize, message: &str| DotError::Syntax {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
        match lines.next() {
            Some((_, "digraph derivation {")) => {}
            _ => return Err(err(1, "expected `digraph derivation {`")),
        }
        let mut closed = false;
        for (n, line) in lines {
            if line.is_empty() || line.starts_with("node ") {
                continue;
            }
            if line == "}" {
                closed = true;
                continue;
            }
            if closed {
                return Err(err(n, "content after closing brace"));
            }
            let body = line
                .strip_suffix("];")
                .ok_or_else(|| err(n, "expected `];` at end of line"))?;
            let (head, attr) = body
                .split_once(" [label=")
                .ok_or_else(|| err(n, "expected a label attribute"))?;
            let (label, rest) = unquote(attr).ok_or_else(|| err(n, "bad label string"))?;
            if !rest.is_empty() {
                return Err(err(n, "trailing attribute text"));
            }
            if let Some((from, to)) = head.split_once(" -> ") {
                let (from, r1) = unquote(from).ok_or_else(|| err(n, "bad node id"))?;
                let (to, r2) = unquote(to).ok_or_else(|| err(n, "bad node id"))?;
                if !r1.is_empty() || !r2.is_empty() {
                    return Err(err(n, "bad edge"));
                }
                g.edges.push(DotEdge {
                    from,
                    to,
                    rule: label,
                });
            } else {
                let (id, r) = unquote(head).ok_or_else(|| err(n, "bad node id"))?;
                if !r.is_empty() {
                    return Err(err(n, "bad node"));
                }
                let clause = label
                    .strip_prefix(&format!("{id}: "))
                    .ok_or_else(|| err(n, "label must start with the node id"))?
                    .to_string();
                g.nodes.push(DotNode { id, clause });
            }
        }
        if !closed {
            return Err(err(text.lines().count(), "missing closing brace"));
        }
        for e in &g.edges {
            for end in [&e.from, &e.to] {
                if !g.nodes.iter().any(|n| &n.id == end) {
                    return Err(DotError::UnknownNode(end.clone()));
                }
            }
        }
        Ok(g)
    }
}

fn premises_of(report: &CheckReport, id: &str) -> Vec<String> {
    report
        .steps
        .iter()
        .find(|s| s.results.iter().any(|r| r == id))
        .map(|s| {
            let mut ps: Vec<String> = Vec::new();
            for p in &s.premises {
                if !ps.contains(p) {
                    ps.push(p.clone());
                }
            }
            ps
        })
        .unwrap_or_default()
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Splits a leading quoted string off `s`.
fn unquote(s: &str) -> Option<(String, &str)> {
    let mut chars = s.char_indices();
    if chars.next()?.1 != '"' {
        return None;
    }
    let mut out = String::new();
    let mut escaped = false;
    for (k, c) in chars {
        if escaped {
            out.push(c);
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '"' {
            return Some((out, &s[k + 1..]));
        } else {
            out.push(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::check_builtin;

    #[test]
    fn ref1_graph() {
        let g = DerivationGraph::from_report(&check_builtin("ref1").unwrap());
        assert_eq!(g.nodes.len(), 13);
        assert_eq!(g.nodes.last().unwrap().clause, "[]");
        let rules: std::collections::BTreeSet<&str> =
            g.edges.iter().map(|e| e.rule.as_str()).collect();
        assert_eq!(
            rules.into_iter().collect::<Vec<_>>(),
            ["Dec", "FlexRig", "Res", "Solve", "Triv"]
        );
        assert_eq!(DerivationGraph::parse(&g.to_dot()).unwrap(), g);
    }

    #[test]
    fn ref2_graph() {
        let g = DerivationGraph::from_report(&check_builtin("ref2").unwrap());
        assert_eq!(g.nodes.len(), 24);
        assert_eq!(DerivationGraph::parse(&g.to_dot()).unwrap(), g);
    }

    #[test]
    fn quoting() {
        assert_eq!(
            unquote(r#""a\"b\\c" rest"#),
            Some((r#"a"b\c"#.to_string(), " rest"))
        );
        assert_eq!(quote(r#"a"b"#), r#""a\"b""#);
    }

    #[test]
    fn rejects_malformed() {
        assert!(DerivationGraph::parse("graph x {\n}").is_err());
        assert!(DerivationGraph::parse(
            "digraph derivation {\n  \"C1\" -> \"C2\" [label=\"Res\"];\n}"
        )
        .is_err());
        assert!(DerivationGraph::parse("digraph derivation {\n").is_err());
    }
}
