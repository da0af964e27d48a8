use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Nfa, Word};
use crate::error::{Error, Result};

/// A total deterministic automaton: every state has exactly one successor per
/// symbol. An empty language is one non-final state looping on everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// `delta[q][a]` is the successor of `q` on symbol `a`.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        let oob = |q: usize| Error::StateOutOfRange {
            state: q,
            num_states: n,
        };
        if initial >= n {
            return Err(oob(initial));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::AlphabetMismatch);
            }
            if let Some(&q) = row.iter().find(|&&q| q >= n) {
                return Err(oob(q));
            }
        }
        let mut flags = vec![false; n];
        for q in finals {
            if q >= n {
                return Err(oob(q));
            }
            flags[q] = true;
        }
        Ok(Dfa::from_parts(alphabet, initial, flags, delta))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Self {
        Dfa {
            alphabet,
            initial,
            finals,
            delta,
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        let row = vec![0; alphabet.len()];
        Dfa::from_parts(alphabet, 0, vec![false], vec![row])
    }

    pub fn universal(alphabet: Alphabet) -> Self {
        let row = vec![0; alphabet.len()];
        Dfa::from_parts(alphabet, 0, vec![true], vec![row])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// Always `num_states * |Σ|` because the automaton is total.
    pub fn num_transitions(&self) -> usize {
        self.delta.len() * self.alphabet.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q)
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    /// State reached from the initial state on `word`.
    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.finals[self.run(word)]
    }

    pub fn complement(&self) -> Dfa {
        let finals = self.finals.iter().map(|f| !f).collect();
        Dfa::from_parts(self.alphabet.clone(), self.initial, finals, self.delta.clone())
    }

    pub fn to_nfa(&self) -> Nfa {
        let delta = self
            .delta
            .iter()
            .map(|row| row.iter().copied().enumerate().collect())
            .collect();
        Nfa::from_parts(self.alphabet.clone(), self.initial, self.finals.clone(), delta)
    }

    /// Minimal total DFA for the same language, numbered by breadth-first
    /// traversal from the initial state in symbol order. Equal languages
    /// yield structurally equal results.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reachable = self.reachable_order();

        // Moore-style partition refinement over the reachable states.
        let mut class: HashMap<usize, usize> = reachable
            .iter()
            .map(|&q| (q, usize::from(self.finals[q])))
            .collect();
        let mut num_classes = 0;
        loop {
            let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = HashMap::with_capacity(reachable.len());
            for &q in &reachable {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[&q]);
                sig.extend(self.delta[q].iter().map(|t| class[t]));
                let fresh = signatures.len();
                let id = *signatures.entry(sig).or_insert(fresh);
                next.insert(q, id);
            }
            let count = signatures.len();
            class = next;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }

        // Canonical renumbering by BFS over the quotient.
        let mut rep: HashMap<usize, usize> = HashMap::new();
        for &q in &reachable {
            rep.entry(class[&q]).or_insert(q);
        }
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![class[&self.initial]];
        number.insert(order[0], 0);
        let mut i = 0;
        while i < order.len() {
            let q = rep[&order[i]];
            for &t in &self.delta[q] {
                let c = class[&t];
                if !number.contains_key(&c) {
                    number.insert(c, order.len());
                    order.push(c);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .map(|c| {
                self.delta[rep[c]]
                    .iter()
                    .map(|t| number[&class[t]])
                    .collect()
            })
            .collect();
        let finals = order.iter().map(|c| self.finals[rep[c]]).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    fn reachable_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.delta[order[i]] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// The shortlex-least word on which `self` and `other` disagree, or
    /// `None` when their languages are equal.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), usize)>> = HashMap::new();
        let start = (self.initial, other.initial);
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair @ (p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some((prev, a)) = parent[&cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(Word::from(word)));
            }
            for a in 0..self.alphabet.len() {
                let next = (self.delta[p][a], other.delta[q][a]);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    pub fn language_eq(&self, other: &Dfa) -> bool {
        matches!(self.distinguishing_word(other), Ok(None))
    }
}
