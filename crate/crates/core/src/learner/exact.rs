use std::convert::Infallible;

use super::{EquivalenceReply, Teacher};
use crate::automata::{Alphabet, Dfa, Word};

/// Teacher that knows the target DFA. Counterexamples are the shortlex-least
/// words of the symmetric difference.
#[derive(Clone, Debug)]
pub struct ExactTeacher {
    target: Dfa,
    counterexamples: Vec<Word>,
}

impl ExactTeacher {
    pub fn new(target: Dfa) -> Self {
        ExactTeacher {
            target,
            counterexamples: Vec::new(),
        }
    }

    pub fn target(&self) -> &Dfa {
        &self.target
    }

    /// Every counterexample handed out so far.
    pub fn counterexamples(&self) -> &[Word] {
        &self.counterexamples
    }
}

impl Teacher for ExactTeacher {
    type Stop = Infallible;

    fn alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    fn membership(&mut self, word: &Word) -> bool {
        self.target.accepts(word)
    }

    fn equivalence(&mut self, hypothesis: &Dfa) -> EquivalenceReply<Infallible> {
        match hypothesis
            .distinguishing_word(&self.target)
            .expect("hypothesis over the target alphabet")
        {
            None => EquivalenceReply::Equal,
            Some(w) => {
                self.counterexamples.push(w.clone());
                EquivalenceReply::Counterexample(w)
            }
        }
    }
}
