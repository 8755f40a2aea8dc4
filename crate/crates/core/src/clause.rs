//! Literals, clauses, variant equality and renaming apart.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::subst::Substitution;
use crate::term::{Term, TypeError, Var};
use crate::types::SimpleType;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Polarity::Positive
    }
}

/// A proposition-typed atom with a polarity: `[atom]^T` or `[atom]^F`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Literal {
    atom: Term,
    polarity: Polarity,
}

impl Literal {
    /// Normalizes the atom and checks it is a proposition.
    pub fn new(atom: Term, polarity: Polarity) -> Result<Self, TypeError> {
        let ty = atom.type_of()?;
        if ty != SimpleType::Prop {
            return Err(TypeError::NotProposition(ty));
        }
        let atom = if atom.is_beta_normal() {
            atom
        } else {
            atom.beta_normalize()
        };
        Ok(Literal { atom, polarity })
    }

    pub fn positive(atom: Term) -> Result<Self, TypeError> {
        Literal::new(atom, Polarity::Positive)
    }

    pub fn negative(atom: Term) -> Result<Self, TypeError> {
        Literal::new(atom, Polarity::Negative)
    }

    /// `[left = right]^F`
    pub fn disequation(left: Term, right: Term) -> Result<Self, TypeError> {
        Literal::negative(Term::equation(left, right)?)
    }

    pub fn atom(&self) -> &Term {
        &self.atom
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn is_positive(&self) -> bool {
        self.polarity.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_positive()
    }

    pub fn with_polarity(&self, polarity: Polarity) -> Self {
        Literal {
            atom: self.atom.clone(),
            polarity,
        }
    }

    pub fn substitute(&self, sigma: &Substitution) -> Self {
        Literal {
            atom: sigma.apply(&self.atom),
            polarity: self.polarity,
        }
    }

    pub fn weight(&self) -> usize {
        self.atom.weight()
    }
}

/// A multiset of literals; the empty clause is `[]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn unit(lit: Literal) -> Self {
        Clause::new(vec![lit])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn into_literals(self) -> Vec<Literal> {
        self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn literal(&self, i: usize) -> Option<&Literal> {
        self.literals.get(i)
    }

    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for l in &self.literals {
            l.atom.collect_vars(&mut out, &mut seen);
        }
        out
    }

    pub fn var_names(&self) -> HashSet<String> {
        self.free_vars()
            .iter()
            .map(|v| v.name.to_string())
            .collect()
    }

    pub fn substitute(&self, sigma: &Substitution) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.substitute(sigma)).collect())
    }

    pub fn weight(&self) -> usize {
        self.literals.iter().map(Literal::weight).sum()
    }

    /// Copy without literal `i`.
    pub fn without(&self, i: usize) -> Vec<Literal> {
        self.literals
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// Copy with literal `i` replaced by `replacement` (in place).
    pub fn splice(&self, i: usize, replacement: Vec<Literal>) -> Clause {
        let mut lits = Vec::with_capacity(self.len() + replacement.len());
        lits.extend_from_slice(&self.literals[..i]);
        lits.extend(replacement);
        lits.extend_from_slice(&self.literals[i + 1..]);
        Clause::new(lits)
    }

    /// Order-insensitive fingerprint invariant under variable renaming.
    pub fn variant_key(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut parts: Vec<u64> = self
            .literals
            .iter()
            .map(|l| {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                l.polarity.hash(&mut h);
                let anon = l.atom.replace_vars(&|v| Some(Term::var("_", v.ty.clone())));
                anon.hash(&mut h);
                h.finish()
            })
            .collect();
        parts.sort_unstable();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        parts.hash(&mut h);
        h.finish()
    }
}

impl From<Vec<Literal>> for Clause {
    fn from(lits: Vec<Literal>) -> Self {
        Clause::new(lits)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_literal(self))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_clause(self))
    }
}

/// Bijective variable correspondence built up during matching.
#[derive(Default, Clone)]
struct Renaming {
    fwd: HashMap<Var, Var>,
    bwd: HashMap<Var, Var>,
}

impl Renaming {
    fn bind(&mut self, x: &Var, y: &Var) -> bool {
        if x.ty != y.ty {
            return false;
        }
        match (self.fwd.get(x), self.bwd.get(y)) {
            (Some(a), Some(b)) => a == y && b == x,
            (None, None) => {
                self.fwd.insert(x.clone(), y.clone());
                self.bwd.insert(y.clone(), x.clone());
                true
            }
            _ => false,
        }
    }
}

fn match_terms(t: &Term, u: &Term, ren: &mut Renaming) -> bool {
    match (t, u) {
        (Term::Var(x), Term::Var(y)) => ren.bind(x, y),
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::Bound(i, s), Term::Bound(j, r)) => i == j && s == r,
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            match_terms(f1, f2, ren) && match_terms(a1, a2, ren)
        }
        (Term::Lam(b1, x1), Term::Lam(b2, x2)) => b1 == b2 && match_terms(x1, x2, ren),
        _ => false,
    }
}

/// True iff some bijective renaming of free variables plus a bijection of
/// literals makes the clauses identical up to α-equivalence.
pub fn clause_variant_equal(c: &Clause, d: &Clause) -> bool {
    if c.len() != d.len() {
        return false;
    }
    let mut used = vec![false; d.len()];
    variant_search(
        c.literals(),
        d.literals(),
        0,
        &mut used,
        &Renaming::default(),
    )
}

fn variant_search(
    c: &[Literal],
    d: &[Literal],
    k: usize,
    used: &mut [bool],
    ren: &Renaming,
) -> bool {
    if k == c.len() {
        return true;
    }
    let lit = &c[k];
    for j in 0..d.len() {
        if used[j] || d[j].polarity != lit.polarity {
            continue;
        }
        let mut r = ren.clone();
        if match_terms(&lit.atom, &d[j].atom, &mut r) {
            used[j] = true;
            if variant_search(c, d, k + 1, used, &r) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Matches two sets of clauses by a bijection of pairwise variants.
pub fn clause_sets_variant_equal(cs: &[Clause], ds: &[Clause]) -> bool {
    fn go(cs: &[Clause], ds: &[Clause], used: &mut [bool]) -> bool {
        let Some((first, rest)) = cs.split_first() else {
            return true;
        };
        for j in 0..ds.len() {
            if !used[j] && clause_variant_equal(first, &ds[j]) {
                used[j] = true;
                if go(rest, ds, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    cs.len() == ds.len() && go(cs, ds, &mut vec![false; ds.len()])
}

/// Produces fresh variable names of the form `<base><n>`.
pub fn fresh_name(base: &str, avoid: &HashSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    let stem = if stem.is_empty() { "V" } else { stem };
    (1..)
        .map(|n| format!("{stem}{n}"))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded name supply")
}

pub fn fresh_var(base: &str, ty: SimpleType, avoid: &mut HashSet<String>) -> Var {
    let name = fresh_name(base, avoid);
    avoid.insert(name.clone());
    Var::new(Arc::<str>::from(name), ty)
}

/// A renamed copy of a clause together with the renaming used.
#[derive(Clone, Debug)]
pub struct RenamedClause {
    pub clause: Clause,
    pub renaming: BTreeMap<Var, Var>,
}

/// Renames every free variable of `c` to a name outside `avoid` and outside
/// the clause's own variables.
pub fn rename_apart(c: &Clause, avoid: &HashSet<String>) -> RenamedClause {
    let vars = c.free_vars();
    if vars.is_empty() {
        return RenamedClause {
            clause: c.clone(),
            renaming: BTreeMap::new(),
        };
    }
    let mut taken: HashSet<String> = avoid.clone();
    taken.extend(vars.iter().map(|v| v.name.to_string()));
    let mut renaming = BTreeMap::new();
    let mut sigma = Substitution::new();
    for v in vars {
        let nv = fresh_var(&v.name, v.ty.clone(), &mut taken);
        sigma
            .insert(v.clone(), Term::Var(nv.clone()))
            .expect("renaming preserves types");
        renaming.insert(v, nv);
    }
    RenamedClause {
        clause: c.substitute(&sigma),
        renaming,
    }
}
