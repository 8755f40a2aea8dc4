use std::collections::BTreeMap;

use thiserror::Error;

use crate::term::{is_logical_name, Const};
use crate::types::SimpleType;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("`{0}` is a logical constant and cannot be redeclared")]
    Reserved(String),
    #[error("constant `{0}` declared twice with different types")]
    Conflict(String),
    #[error("constant names must start with a lowercase letter: `{0}`")]
    BadName(String),
}

/// Non-logical constants and their types. `=`, `~`, `&` and `|` are always
/// available and never stored here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    constants: BTreeMap<String, SimpleType>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{a: i, f: i>i, g: i>i}`
    pub fn counterexample() -> Self {
        let ii = SimpleType::arrow(SimpleType::Ind, SimpleType::Ind);
        let mut s = Signature::new();
        s.declare("a", SimpleType::Ind).unwrap();
        s.declare("f", ii.clone()).unwrap();
        s.declare("g", ii).unwrap();
        s
    }

    pub fn declare(&mut self, name: &str, ty: SimpleType) -> Result<(), SignatureError> {
        if is_logical_name(name) || matches!(name, "eq" | "not" | "and" | "or") {
            return Err(SignatureError::Reserved(name.to_string()));
        }
        if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        match self.constants.get(name) {
            Some(old) if *old != ty => Err(SignatureError::Conflict(name.to_string())),
            _ => {
                self.constants.insert(name.to_string(), ty);
                Ok(())
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Const> {
        self.constants
            .get(name)
            .map(|ty| Const::new(name, ty.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SimpleType)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}
