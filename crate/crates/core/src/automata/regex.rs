use std::collections::HashMap;
use std::fmt;

use super::{thompson, Alphabet, Nfa};
use crate::error::{Error, Result};

/// Regular expression syntax tree, generic over the leaf type.
///
/// Plain languages use symbol names as leaves; transducers use
/// [`SymbolPair`](crate::transducer::SymbolPair) leaves. `Ref` names a
/// sub-expression bound elsewhere and must be resolved before compiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex<L = String> {
    Empty,
    Epsilon,
    Sym(L),
    Concat(Box<Regex<L>>, Box<Regex<L>>),
    Union(Box<Regex<L>>, Box<Regex<L>>),
    Star(Box<Regex<L>>),
    Ref(String),
}

impl<L> Regex<L> {
    pub fn sym(leaf: impl Into<L>) -> Self {
        Regex::Sym(leaf.into())
    }

    pub fn concat(self, other: Regex<L>) -> Self {
        Regex::Concat(Box::new(self), Box::new(other))
    }

    pub fn union(self, other: Regex<L>) -> Self {
        Regex::Union(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> Self {
        Regex::Star(Box::new(self))
    }

    /// Concatenation of a sequence; λ for an empty sequence.
    pub fn seq(parts: impl IntoIterator<Item = Regex<L>>) -> Self {
        parts
            .into_iter()
            .reduce(Regex::concat)
            .unwrap_or(Regex::Epsilon)
    }

    /// Union of a sequence; ∅ for an empty sequence.
    pub fn any(parts: impl IntoIterator<Item = Regex<L>>) -> Self {
        parts.into_iter().reduce(Regex::union).unwrap_or(Regex::Empty)
    }

    /// Rebuilds the tree with every leaf mapped through `f`.
    pub fn try_map<M, E>(&self, f: &mut impl FnMut(&L) -> Result<M, E>) -> Result<Regex<M>, E> {
        Ok(match self {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Sym(l) => Regex::Sym(f(l)?),
            Regex::Concat(a, b) => Regex::Concat(Box::new(a.try_map(f)?), Box::new(b.try_map(f)?)),
            Regex::Union(a, b) => Regex::Union(Box::new(a.try_map(f)?), Box::new(b.try_map(f)?)),
            Regex::Star(a) => Regex::Star(Box::new(a.try_map(f)?)),
            Regex::Ref(name) => Regex::Ref(name.clone()),
        })
    }

    pub fn has_refs(&self) -> bool {
        match self {
            Regex::Ref(_) => true,
            Regex::Concat(a, b) | Regex::Union(a, b) => a.has_refs() || b.has_refs(),
            Regex::Star(a) => a.has_refs(),
            _ => false,
        }
    }
}

impl<L: Clone> Regex<L> {
    /// Inlines every `Ref` from `env`, recursively.
    pub fn resolve(&self, env: &HashMap<String, Regex<L>>) -> Result<Regex<L>> {
        self.resolve_inner(env, &mut Vec::new())
    }

    fn resolve_inner(&self, env: &HashMap<String, Regex<L>>, stack: &mut Vec<String>) -> Result<Regex<L>> {
        Ok(match self {
            Regex::Ref(name) => {
                if stack.contains(name) {
                    return Err(Error::CyclicRef(name.clone()));
                }
                let body = env.get(name).ok_or_else(|| Error::UnresolvedRef(name.clone()))?;
                stack.push(name.clone());
                let r = body.resolve_inner(env, stack)?;
                stack.pop();
                r
            }
            Regex::Concat(a, b) => a.resolve_inner(env, stack)?.concat(b.resolve_inner(env, stack)?),
            Regex::Union(a, b) => a.resolve_inner(env, stack)?.union(b.resolve_inner(env, stack)?),
            Regex::Star(a) => a.resolve_inner(env, stack)?.star(),
            other => other.clone(),
        })
    }
}

impl From<&str> for Regex<String> {
    fn from(name: &str) -> Self {
        Regex::Sym(name.to_string())
    }
}

/// Compiles a plain regex into a λ-free NFA over `alphabet`.
pub fn compile_regex(regex: &Regex, alphabet: &Alphabet) -> Result<Nfa> {
    let (finals, delta) = thompson::compile(regex, &mut |name: &String| {
        alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))
    })?;
    Ok(Nfa::from_parts(alphabet.clone(), 0, finals, delta))
}

// Precedence levels: union < concatenation < star.
fn write_regex<L: fmt::Display>(r: &Regex<L>, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match r {
        Regex::Empty => f.write_str("∅"),
        Regex::Epsilon => f.write_str("eps"),
        Regex::Sym(l) => write!(f, "{l}"),
        Regex::Ref(name) => f.write_str(name),
        Regex::Union(a, b) => {
            if ctx > 0 {
                f.write_str("(")?;
            }
            write_regex(a, 0, f)?;
            f.write_str(" + ")?;
            write_regex(b, 0, f)?;
            if ctx > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Concat(a, b) => {
            if ctx > 1 {
                f.write_str("(")?;
            }
            write_regex(a, 1, f)?;
            f.write_str(" ")?;
            write_regex(b, 1, f)?;
            if ctx > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Regex::Star(a) => {
            write_regex(a, 2, f)?;
            f.write_str("*")
        }
    }
}

impl<L: fmt::Display> fmt::Display for Regex<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_regex(self, 0, f)
    }
}
