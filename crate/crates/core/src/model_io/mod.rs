//! The `.rmc` model format and GraphViz export.
//!
//! ```text
//! alphabet: T N
//! let E = (T/T + N/N)*;
//! init: N* T (N* T N* T N*)*
//! trans: E
//! trans: E T/N N/T E
//! bad: N*
//! ```

mod dot;
mod parser;

use std::collections::HashMap;
use std::fmt;

use crate::automata::{compile_regex, Alphabet, Regex};
use crate::error::Result;
use crate::teacher::RmcProblem;
use crate::transducer::{PairRegex, SymbolPair, Transducer};

pub use dot::{export_dot, ToDot};
pub use parser::{parse_model_doc, parse_regex};

/// Body of a `let` binding. Plain bindings may be used in `init` and `bad`,
/// pair bindings in `trans`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Plain(Regex),
    Pair(PairRegex),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Plain(r) => write!(f, "{r}"),
            Binding::Pair(r) => write!(f, "{r}"),
        }
    }
}

/// A parsed model file, with `let` references left unexpanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDoc {
    pub alphabet: Alphabet,
    pub lets: Vec<(String, Binding)>,
    pub init: Regex,
    /// Implicitly unioned.
    pub trans: Vec<PairRegex>,
    pub bad: Regex,
}

impl ModelDoc {
    fn plain_env(&self) -> HashMap<String, Regex> {
        self.lets
            .iter()
            .filter_map(|(n, b)| match b {
                Binding::Plain(r) => Some((n.clone(), r.clone())),
                Binding::Pair(_) => None,
            })
            .collect()
    }

    fn pair_env(&self) -> HashMap<String, PairRegex> {
        self.lets
            .iter()
            .filter_map(|(n, b)| match b {
                Binding::Pair(r) => Some((n.clone(), r.clone())),
                // A leafless plain binding (only `eps`) is usable here too.
                Binding::Plain(r) => r
                    .try_map(&mut |_: &String| Err::<SymbolPair, ()>(()))
                    .ok()
                    .map(|r| (n.clone(), r)),
            })
            .collect()
    }

    /// `init` with every reference expanded.
    pub fn init_regex(&self) -> Result<Regex> {
        self.init.resolve(&self.plain_env())
    }

    pub fn bad_regex(&self) -> Result<Regex> {
        self.bad.resolve(&self.plain_env())
    }

    /// The union of all `trans` lines with every reference expanded.
    pub fn trans_regex(&self) -> Result<PairRegex> {
        Regex::any(self.trans.iter().cloned()).resolve(&self.pair_env())
    }

    pub fn to_problem(&self) -> Result<RmcProblem> {
        let init = compile_regex(&self.init_regex()?, &self.alphabet)?;
        let bad = compile_regex(&self.bad_regex()?, &self.alphabet)?;
        let trans = Transducer::compile(&self.trans_regex()?, &self.alphabet)?;
        RmcProblem::new(init, trans, bad)
    }
}

impl fmt::Display for ModelDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        for (name, body) in &self.lets {
            writeln!(f, "let {name} = {body};")?;
        }
        writeln!(f, "init: {}", self.init)?;
        for t in &self.trans {
            writeln!(f, "trans: {t}")?;
        }
        writeln!(f, "bad: {}", self.bad)
    }
}

/// Parses a model file straight into a problem.
pub fn parse_model(text: &str) -> Result<RmcProblem> {
    parse_model_doc(text)?.to_problem()
}
