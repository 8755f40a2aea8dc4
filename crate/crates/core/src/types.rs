//! Simple types over the two base sorts: individuals and propositions.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SimpleType {
    /// ι, individuals.
    Ind,
    /// o, propositions.
    Prop,
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
}

impl SimpleType {
    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> SimpleType {
        SimpleType::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    /// Builds `a1 > a2 > ... > result`.
    pub fn curried<I>(args: I, result: SimpleType) -> SimpleType
    where
        I: IntoIterator<Item = SimpleType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| SimpleType::arrow(arg, acc))
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, SimpleType::Arrow(..))
    }

    /// Splits into argument types and the final base type.
    pub fn uncurry(&self) -> (Vec<SimpleType>, SimpleType) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SimpleType::Arrow(d, c) = cur {
            args.push((**d).clone());
            cur = c;
        }
        (args, cur.clone())
    }

    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let SimpleType::Arrow(_, c) = cur {
            n += 1;
            cur = c;
        }
        n
    }

    /// Result type after applying `n` arguments, if that many are accepted.
    pub fn apply_n(&self, n: usize) -> Option<&SimpleType> {
        let mut cur = self;
        for _ in 0..n {
            match cur {
                SimpleType::Arrow(_, c) => cur = c,
                _ => return None,
            }
        }
        Some(cur)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Ind => write!(f, "i"),
            SimpleType::Prop => write!(f, "o"),
            SimpleType::Arrow(d, c) => {
                if d.is_arrow() {
                    write!(f, "({d}) > {c}")
                } else {
                    write!(f, "{d} > {c}")
                }
            }
        }
    }
}
