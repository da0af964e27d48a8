use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol index {0} is out of range for the alphabet")]
    SymbolOutOfRange(usize),
    #[error("state {state} is out of range (automaton has {num_states} states)")]
    StateOutOfRange { state: usize, num_states: usize },
    #[error("automaton has no states")]
    NoStates,
    #[error("operands are defined over different alphabets")]
    AlphabetMismatch,
    #[error("unresolved reference to {0:?}")]
    UnresolvedRef(String),
    #[error("cyclic definition of {0:?}")]
    CyclicRef(String),
    #[error("transducer is not length-preserving")]
    NotLengthPreserving,
    #[error("table is not closed")]
    TableNotClosed,
    #[error("word is not a counterexample for the current hypothesis")]
    NotCounterexample,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsound verdict: {0}")]
    Unsound(String),
}

/// A model-file diagnostic; lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
