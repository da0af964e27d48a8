use std::collections::HashMap;

use super::{Alphabet, Dfa, Word};
use crate::error::{Error, Result};

/// A λ-free nondeterministic automaton with one initial state.
///
/// Outgoing transitions of each state are kept sorted by `(symbol, target)`
/// and deduplicated, so two structurally equal automata compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    pub fn new<T, F>(
        alphabet: Alphabet,
        num_states: usize,
        initial: usize,
        transitions: T,
        finals: F,
    ) -> Result<Self>
    where
        T: IntoIterator<Item = (usize, usize, usize)>,
        F: IntoIterator<Item = usize>,
    {
        if num_states == 0 {
            return Err(Error::NoStates);
        }
        let check = |q: usize| {
            if q < num_states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange {
                    state: q,
                    num_states,
                })
            }
        };
        check(initial)?;
        let mut delta = vec![Vec::new(); num_states];
        for (p, a, q) in transitions {
            check(p)?;
            check(q)?;
            if a >= alphabet.len() {
                return Err(Error::SymbolOutOfRange(a));
            }
            delta[p].push((a, q));
        }
        let mut final_flags = vec![false; num_states];
        for q in finals {
            check(q)?;
            final_flags[q] = true;
        }
        Ok(Nfa::from_parts(alphabet, initial, final_flags, delta))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        finals: Vec<bool>,
        mut delta: Vec<Vec<(usize, usize)>>,
    ) -> Self {
        for edges in &mut delta {
            edges.sort_unstable();
            edges.dedup();
        }
        Nfa {
            alphabet,
            initial,
            finals,
            delta,
        }
    }

    /// One non-final state, no transitions.
    pub fn empty(alphabet: Alphabet) -> Self {
        Nfa::from_parts(alphabet, 0, vec![false], vec![Vec::new()])
    }

    /// Accepts only λ.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        Nfa::from_parts(alphabet, 0, vec![true], vec![Vec::new()])
    }

    /// Accepts every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let loops = (0..alphabet.len()).map(|a| (a, 0)).collect();
        Nfa::from_parts(alphabet, 0, vec![true], vec![loops])
    }

    /// Accepts exactly `word`.
    pub fn word(alphabet: Alphabet, word: &Word) -> Result<Self> {
        alphabet.check_word(word)?;
        let n = word.len() + 1;
        let delta = (0..n)
            .map(|i| word.get(i).map(|&a| vec![(a, i + 1)]).unwrap_or_default())
            .collect();
        let mut finals = vec![false; n];
        finals[n - 1] = true;
        Ok(Nfa::from_parts(alphabet, 0, finals, delta))
    }

    /// Accepts every word of length exactly `len`.
    pub fn all_of_length(alphabet: Alphabet, len: usize) -> Self {
        let k = alphabet.len();
        let delta = (0..=len)
            .map(|i| {
                if i < len {
                    (0..k).map(|a| (a, i + 1)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut finals = vec![false; len + 1];
        finals[len] = true;
        Nfa::from_parts(alphabet, 0, finals, delta)
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

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(q, _)| q)
    }

    /// Outgoing `(symbol, target)` pairs of `state`, sorted.
    pub fn successors(&self, state: usize) -> &[(usize, usize)] {
        &self.delta[state]
    }

    /// All transitions as `(source, symbol, target)`, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, edges)| edges.iter().map(move |&(a, q)| (p, a, q)))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let mut current = vec![false; self.num_states()];
        current[self.initial] = true;
        for &a in word.iter() {
            let mut next = vec![false; self.num_states()];
            let mut any = false;
            for (p, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &(b, q) in &self.delta[p] {
                    if a == b {
                        next[q] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return false;
            }
            current = next;
        }
        current
            .iter()
            .zip(&self.finals)
            .any(|(&on, &fin)| on && fin)
    }

    /// The shortest accepted word, ties broken lexicographically by symbol
    /// order, or `None` when the language is empty.
    pub fn shortest_word(&self) -> Option<Word> {
        // BFS over groups of states sharing one discovering word. Groups are
        // created in shortlex order of their words, and a state joins only
        // the first group that reaches it.
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        // (parent group, symbol, states)
        let mut groups: Vec<(usize, usize, Vec<usize>)> = vec![(usize::MAX, 0, vec![self.initial])];
        let mut i = 0;
        while i < groups.len() {
            if groups[i].2.iter().any(|&q| self.finals[q]) {
                let mut word = Vec::new();
                let mut g = i;
                while g != 0 {
                    word.push(groups[g].1);
                    g = groups[g].0;
                }
                word.reverse();
                return Some(Word::from(word));
            }
            for a in 0..self.alphabet.len() {
                let mut next = Vec::new();
                for &p in &groups[i].2 {
                    for &(b, q) in &self.delta[p] {
                        if b == a && !seen[q] {
                            seen[q] = true;
                            next.push(q);
                        }
                    }
                }
                if !next.is_empty() {
                    groups.push((i, a, next));
                }
            }
            i += 1;
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    fn same_alphabet(&self, other: &Alphabet) -> Result<()> {
        if &self.alphabet == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Product automaton over reachable state pairs.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(&other.alphabet)?;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut edges = Vec::new();
            for &(a, p2) in &self.delta[p] {
                for &(b, q2) in &other.delta[q] {
                    if a != b {
                        continue;
                    }
                    let target = *index.entry((p2, q2)).or_insert_with(|| {
                        pairs.push((p2, q2));
                        pairs.len() - 1
                    });
                    edges.push((a, target));
                }
            }
            delta.push(edges);
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| self.finals[p] && other.finals[q])
            .collect();
        Ok(Nfa::from_parts(self.alphabet.clone(), 0, finals, delta))
    }

    /// Disjoint union behind a fresh initial state that copies the outgoing
    /// transitions of both original initial states.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(&other.alphabet)?;
        let off_a = 1;
        let off_b = 1 + self.num_states();
        let mut delta = Vec::with_capacity(off_b + other.num_states());
        let start: Vec<(usize, usize)> = self.delta[self.initial]
            .iter()
            .map(|&(a, q)| (a, q + off_a))
            .chain(
                other.delta[other.initial]
                    .iter()
                    .map(|&(a, q)| (a, q + off_b)),
            )
            .collect();
        delta.push(start);
        delta.extend(
            self.delta
                .iter()
                .map(|e| e.iter().map(|&(a, q)| (a, q + off_a)).collect()),
        );
        delta.extend(
            other
                .delta
                .iter()
                .map(|e| e.iter().map(|&(a, q)| (a, q + off_b)).collect()),
        );
        let mut finals = vec![self.finals[self.initial] || other.finals[other.initial]];
        finals.extend_from_slice(&self.finals);
        finals.extend_from_slice(&other.finals);
        Ok(Nfa::from_parts(self.alphabet.clone(), 0, finals, delta).trim())
    }

    /// Drops states unreachable from the initial state.
    pub fn trim(&self) -> Nfa {
        let n = self.num_states();
        let mut map = vec![usize::MAX; n];
        let mut order = vec![self.initial];
        map[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for &(_, q) in &self.delta[order[i]] {
                if map[q] == usize::MAX {
                    map[q] = order.len();
                    order.push(q);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .map(|&p| self.delta[p].iter().map(|&(a, q)| (a, map[q])).collect())
            .collect();
        let finals = order.iter().map(|&p| self.finals[p]).collect();
        Nfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    /// Subset construction. Only reachable subsets are built; the empty
    /// subset becomes the sink when it is reachable.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let start = vec![self.initial];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(start.clone(), 0);
        let mut subsets = vec![start];
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k];
            for &p in &subsets[i] {
                for &(a, q) in &self.delta[p] {
                    buckets[a].push(q);
                }
            }
            for mut target in buckets {
                target.sort_unstable();
                target.dedup();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, delta)
    }

    /// `None` when L(self) ⊆ L(other), otherwise the shortlex-least word of
    /// L(self) \ L(other).
    pub fn includes_in(&self, other: &Dfa) -> Result<Option<Word>> {
        Ok(self.intersect(&other.complement().to_nfa())?.shortest_word())
    }
}

/// `None` when L(a) ⊆ L(b); otherwise the shortlex-least word of L(a) \ L(b).
pub fn includes(a: &Nfa, b: &Dfa) -> Result<Option<Word>> {
    a.includes_in(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tn() -> Alphabet {
        Alphabet::new(["T", "N"]).unwrap()
    }

    fn w(s: &str) -> Word {
        tn().parse_word(s).unwrap()
    }

    /// (T+N)*T, nondeterministic.
    fn ends_in_t() -> Nfa {
        Nfa::new(tn(), 2, 0, [(0, 0, 0), (0, 1, 0), (0, 0, 1)], [1]).unwrap()
    }

    #[test]
    fn construction_validates_states() {
        assert!(matches!(
            Nfa::new(tn(), 1, 0, [(0, 0, 3)], []),
            Err(Error::StateOutOfRange { state: 3, .. })
        ));
        assert!(Nfa::new(tn(), 1, 0, [(0, 7, 0)], []).is_err());
        assert_eq!(Nfa::new(tn(), 0, 0, [], []), Err(Error::NoStates));
    }

    #[test]
    fn accepts_runs() {
        let m = ends_in_t();
        assert!(m.accepts(&w("NNT")));
        assert!(!m.accepts(&w("TN")));
        assert!(!m.accepts(&Word::empty()));
        assert!(!Nfa::empty(tn()).accepts(&Word::empty()));
    }

    #[test]
    fn shortest_word_prefers_length_then_symbol_order() {
        assert_eq!(Nfa::empty(tn()).shortest_word(), None);
        // N* accepts λ first.
        let nstar = Nfa::new(tn(), 1, 0, [(0, 1, 0)], [0]).unwrap();
        assert_eq!(nstar.shortest_word(), Some(Word::empty()));
        // {NT, TN, NN}: TN wins on symbol order (T before N).
        let m = Nfa::new(
            tn(),
            4,
            0,
            [(0, 1, 1), (1, 0, 3), (0, 0, 2), (2, 1, 3), (1, 1, 3)],
            [3],
        )
        .unwrap();
        assert_eq!(m.shortest_word(), Some(w("TN")));
    }

    #[test]
    fn boolean_operations() {
        let m = ends_in_t();
        let all = Nfa::universal(tn());
        let u = m.union(&Nfa::empty(tn())).unwrap();
        for x in Word::all_up_to(2, 5) {
            assert_eq!(u.accepts(&x), m.accepts(&x));
            assert_eq!(m.intersect(&all).unwrap().accepts(&x), m.accepts(&x));
        }
        let other = Nfa::universal(Alphabet::new(["a"]).unwrap());
        assert_eq!(m.intersect(&other), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn determinize_then_minimize_gives_two_states() {
        let d = ends_in_t().determinize();
        for x in Word::all_up_to(2, 6) {
            assert_eq!(d.accepts(&x), ends_in_t().accepts(&x));
        }
        let m = d.minimize();
        assert_eq!(m.num_states(), 2);
    }

    #[test]
    fn determinize_without_finals_rejects_everything() {
        let m = Nfa::new(tn(), 2, 0, [(0, 0, 1)], []).unwrap();
        let d = m.determinize();
        assert!(Word::all_up_to(2, 4).all(|x| !d.accepts(&x)));
        assert_eq!(d.minimize().num_states(), 1);
    }

    #[test]
    fn inclusion() {
        let m = ends_in_t();
        assert_eq!(includes(&m, &m.determinize()).unwrap(), None);
        // Σ* ⊄ N*: the shortest word with a T is T itself.
        let nstar = Nfa::new(tn(), 1, 0, [(0, 1, 0)], [0]).unwrap().determinize();
        assert_eq!(includes(&Nfa::universal(tn()), &nstar).unwrap(), Some(w("T")));
    }

    #[test]
    fn fixed_length_language() {
        let m = Nfa::all_of_length(tn(), 3);
        assert!(m.accepts(&w("TNT")));
        assert!(!m.accepts(&w("TN")));
        assert_eq!(m.shortest_word(), Some(w("TTT")));
    }
}
