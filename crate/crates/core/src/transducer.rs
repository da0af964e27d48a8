//! Length-preserving regular relations and their images.

use std::collections::HashMap;
use std::fmt;

use crate::automata::{thompson, Alphabet, Dfa, Nfa, Regex, Word};
use crate::error::{Error, Result};

/// Leaf of a pair regex: reads `input`, writes `output`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolPair {
    pub input: String,
    pub output: String,
}

impl SymbolPair {
    pub fn new(input: impl Into<String>, output: impl Into<String>) -> Self {
        SymbolPair {
            input: input.into(),
            output: output.into(),
        }
    }
}

impl fmt::Display for SymbolPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.input, self.output)
    }
}

impl From<(&str, &str)> for SymbolPair {
    fn from((i, o): (&str, &str)) -> Self {
        SymbolPair::new(i, o)
    }
}

pub type PairRegex = Regex<SymbolPair>;

/// One transducer move. `None` on either side is a λ-move, which only
/// imported (hand-built) transducers may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransducerEdge {
    pub input: Option<usize>,
    pub output: Option<usize>,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    alphabet: Alphabet,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<Vec<TransducerEdge>>,
}

impl Transducer {
    /// Transitions are `(source, input, output, target)`.
    pub fn new<T, F>(
        alphabet: Alphabet,
        num_states: usize,
        initial: usize,
        transitions: T,
        finals: F,
    ) -> Result<Self>
    where
        T: IntoIterator<Item = (usize, Option<usize>, Option<usize>, usize)>,
        F: IntoIterator<Item = usize>,
    {
        if num_states == 0 {
            return Err(Error::NoStates);
        }
        let state = |q: usize| {
            if q < num_states {
                Ok(q)
            } else {
                Err(Error::StateOutOfRange {
                    state: q,
                    num_states,
                })
            }
        };
        let symbol = |a: Option<usize>| match a {
            Some(a) if a >= alphabet.len() => Err(Error::SymbolOutOfRange(a)),
            _ => Ok(a),
        };
        state(initial)?;
        let mut delta = vec![Vec::new(); num_states];
        for (p, i, o, q) in transitions {
            delta[state(p)?].push(TransducerEdge {
                input: symbol(i)?,
                output: symbol(o)?,
                target: state(q)?,
            });
        }
        let mut flags = vec![false; num_states];
        for q in finals {
            flags[state(q)?] = true;
        }
        Ok(Transducer::from_parts(alphabet, initial, flags, delta))
    }

    fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        finals: Vec<bool>,
        mut delta: Vec<Vec<TransducerEdge>>,
    ) -> Self {
        for edges in &mut delta {
            edges.sort_unstable_by_key(|e| (e.input, e.output, e.target));
            edges.dedup();
        }
        Transducer {
            alphabet,
            initial,
            finals,
            delta,
        }
    }

    /// The identity relation on Σ*.
    pub fn identity(alphabet: Alphabet) -> Self {
        let loops = (0..alphabet.len())
            .map(|a| TransducerEdge {
                input: Some(a),
                output: Some(a),
                target: 0,
            })
            .collect();
        Transducer::from_parts(alphabet, 0, vec![true], vec![loops])
    }

    /// Compiles a pair regex; the result is λ-free and length-preserving.
    pub fn compile(regex: &PairRegex, alphabet: &Alphabet) -> Result<Self> {
        let lookup = |name: &String| {
            alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))
        };
        let (finals, delta) = thompson::compile(regex, &mut |pair: &SymbolPair| {
            Ok((lookup(&pair.input)?, lookup(&pair.output)?))
        })?;
        let delta = delta
            .into_iter()
            .map(|edges| {
                edges
                    .into_iter()
                    .map(|((i, o), target)| TransducerEdge {
                        input: Some(i),
                        output: Some(o),
                        target,
                    })
                    .collect()
            })
            .collect();
        Ok(Transducer::from_parts(alphabet.clone(), 0, finals, delta))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn edges(&self, state: usize) -> &[TransducerEdge] {
        &self.delta[state]
    }

    /// True when every move reads and writes exactly one symbol.
    pub fn is_length_preserving(&self) -> bool {
        self.delta
            .iter()
            .flatten()
            .all(|e| e.input.is_some() && e.output.is_some())
    }

    fn require_length_preserving(&self) -> Result<()> {
        if self.is_length_preserving() {
            Ok(())
        } else {
            Err(Error::NotLengthPreserving)
        }
    }

    /// Whether `(x, y)` belongs to the relation. Only meaningful for
    /// length-preserving transducers; pairs of different length are never
    /// related.
    pub fn relates(&self, x: &Word, y: &Word) -> bool {
        if x.len() != y.len() || !self.is_length_preserving() {
            return false;
        }
        let mut current = vec![false; self.num_states()];
        current[self.initial] = true;
        for (&a, &b) in x.iter().zip(y.iter()) {
            let mut next = vec![false; self.num_states()];
            for p in (0..current.len()).filter(|&p| current[p]) {
                for e in &self.delta[p] {
                    if e.input == Some(a) && e.output == Some(b) {
                        next[e.target] = true;
                    }
                }
            }
            current = next;
        }
        (0..current.len()).any(|q| current[q] && self.finals[q])
    }

    /// Post-image T(L).
    pub fn post_image(&self, language: &Nfa) -> Result<Nfa> {
        self.image(language, Direction::Forward)
    }

    /// Pre-image T⁻¹(L).
    pub fn pre_image(&self, language: &Nfa) -> Result<Nfa> {
        self.image(language, Direction::Backward)
    }

    fn image(&self, language: &Nfa, dir: Direction) -> Result<Nfa> {
        if language.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.require_length_preserving()?;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(language.initial(), self.initial)];
        index.insert(pairs[0], 0);
        let mut delta: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut out = Vec::new();
            for e in &self.delta[q] {
                let (read, write) = match dir {
                    Direction::Forward => (e.input, e.output),
                    Direction::Backward => (e.output, e.input),
                };
                let (read, write) = (read.unwrap(), write.unwrap());
                for &(a, p2) in language.successors(p) {
                    if a != read {
                        continue;
                    }
                    let key = (p2, e.target);
                    let target = *index.entry(key).or_insert_with(|| {
                        pairs.push(key);
                        pairs.len() - 1
                    });
                    out.push((write, target));
                }
            }
            delta.push(out);
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| language.is_final(p) && self.finals[q])
            .collect();
        Ok(Nfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

pub fn check_length_preserving(t: &Transducer) -> bool {
    t.is_length_preserving()
}

/// Searches for `(w, w')` with `w ∈ A_h`, `(w, w') ∈ T` and `w' ∉ A_h`.
///
/// The input word is the shortlex-least input of the product
/// `A_h × T × ¬A_h`; the output word is then the shortlex-least successor of
/// that input outside `A_h`.
pub fn inductive_violation(t: &Transducer, candidate: &Dfa) -> Result<Option<(Word, Word)>> {
    if candidate.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let outside = candidate.complement().to_nfa();
    let leaving = t.pre_image(&outside)?;
    let Some(from) = candidate.to_nfa().intersect(&leaving)?.shortest_word() else {
        return Ok(None);
    };
    let single = Nfa::word(t.alphabet().clone(), &from)?;
    let to = t
        .post_image(&single)?
        .intersect(&outside)?
        .shortest_word()
        .expect("input word was chosen to have an escaping successor");
    Ok(Some((from, to)))
}
