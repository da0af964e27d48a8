//! Finite automata over a fixed, ordered alphabet.
//!
//! All stored automata are free of λ-transitions and have a single initial
//! state. [`Dfa`] values are always total. Symbol order inside an
//! [`Alphabet`] drives every tie-break, so shortest-word searches and
//! canonical state numbering are reproducible.

mod alphabet;
mod dfa;
mod nfa;
mod regex;
pub(crate) mod thompson;

pub use alphabet::{Alphabet, Word};
pub use dfa::Dfa;
pub use nfa::{includes, Nfa};
pub use regex::{compile_regex, Regex};
