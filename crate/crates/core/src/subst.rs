use std::collections::BTreeMap;

use crate::term::{Term, TypeError, Var};

/// Type-preserving finite map from free variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(var: Var, term: Term) -> Result<Self, TypeError> {
        let mut s = Self::new();
        s.insert(var, term)?;
        Ok(s)
    }

    /// Adds a binding after checking that `term` has the variable's type and
    /// no escaping bound indices.
    pub fn insert(&mut self, var: Var, term: Term) -> Result<(), TypeError> {
        let ty = term.type_of()?;
        if ty != var.ty {
            return Err(TypeError::BindingMismatch {
                var: var.name.to_string(),
                expected: var.ty,
                found: ty,
            });
        }
        self.map.insert(var, term);
        Ok(())
    }

    pub fn get(&self, var: &Var) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    /// Simultaneous capture-avoiding replacement followed by β-normalization.
    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        t.replace_vars(&|v| self.map.get(v).cloned())
            .beta_normalize()
    }
}

/// `substitute(t, σ)`.
pub fn substitute(t: &Term, sigma: &Substitution) -> Term {
    sigma.apply(t)
}
