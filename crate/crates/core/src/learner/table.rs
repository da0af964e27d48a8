use std::collections::{BTreeMap, HashMap, HashSet};

use super::{MembershipOracle, Teacher};
use crate::automata::{Alphabet, Dfa, Word};
use crate::error::{Error, Result};

/// Angluin-style observation table `(S, E, T)`.
///
/// `T` is stored as a map from full words `u·e` to membership, and is kept
/// filled on `(S ∪ S·Σ)·E` by every mutating method.
#[derive(Clone, Debug)]
pub struct ObservationTable {
    alphabet: Alphabet,
    prefixes: Vec<Word>,
    prefix_set: HashSet<Word>,
    suffixes: Vec<Word>,
    cells: HashMap<Word, bool>,
}

/// Frozen copy of a table, for tracing and inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSnapshot {
    pub prefixes: Vec<Word>,
    pub boundary: Vec<Word>,
    pub suffixes: Vec<Word>,
    pub entries: BTreeMap<Word, bool>,
}

impl TableSnapshot {
    pub fn entry(&self, word: &Word) -> Option<bool> {
        self.entries.get(word).copied()
    }
}

impl ObservationTable {
    /// `S = E = {λ}`, filled through `oracle`.
    pub fn new<T: Teacher>(alphabet: Alphabet, oracle: &mut MembershipOracle<'_, T>) -> Self {
        let mut t = ObservationTable {
            alphabet,
            prefixes: vec![Word::empty()],
            prefix_set: HashSet::from([Word::empty()]),
            suffixes: vec![Word::empty()],
            cells: HashMap::new(),
        };
        t.fill(oracle);
        t
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &[Word] {
        &self.suffixes
    }

    pub fn contains_prefix(&self, u: &Word) -> bool {
        self.prefix_set.contains(u)
    }

    /// `S·Σ \ S`, in the order extensions are discovered.
    pub fn boundary(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        self.extensions()
            .filter(|w| !self.prefix_set.contains(w) && seen.insert(w.clone()))
            .collect()
    }

    fn extensions(&self) -> impl Iterator<Item = Word> + '_ {
        self.prefixes
            .iter()
            .flat_map(move |u| (0..self.alphabet.len()).map(move |a| u.append(a)))
    }

    pub fn cell(&self, word: &Word) -> Option<bool> {
        self.cells.get(word).copied()
    }

    /// `row_E(u)`; `u` must be in `S ∪ S·Σ`.
    pub fn row(&self, u: &Word) -> Vec<bool> {
        self.suffixes
            .iter()
            .map(|e| self.cells[&u.concat(e)])
            .collect()
    }

    pub(crate) fn fill<T: Teacher>(&mut self, oracle: &mut MembershipOracle<'_, T>) {
        let rows: Vec<Word> = self.prefixes.iter().cloned().chain(self.extensions()).collect();
        for u in rows {
            for e in &self.suffixes {
                let w = u.concat(e);
                if !self.cells.contains_key(&w) {
                    let b = oracle.query(&w);
                    self.cells.insert(w, b);
                }
            }
        }
    }

    /// Adds `u` to `S` (no-op if present) and fills the new cells.
    pub fn add_prefix<T: Teacher>(&mut self, u: Word, oracle: &mut MembershipOracle<'_, T>) -> bool {
        if !self.prefix_set.insert(u.clone()) {
            return false;
        }
        self.prefixes.push(u);
        self.fill(oracle);
        true
    }

    /// Adds `e` to `E` (no-op if present) and fills the new column.
    pub fn add_suffix<T: Teacher>(&mut self, e: Word, oracle: &mut MembershipOracle<'_, T>) -> bool {
        if self.suffixes.contains(&e) {
            return false;
        }
        self.suffixes.push(e);
        self.fill(oracle);
        true
    }

    /// First `x·a` (in `S` order, then symbol order) whose row matches no
    /// row of `S`.
    pub fn find_unclosed(&self) -> Option<Word> {
        let upper: HashSet<Vec<bool>> = self.prefixes.iter().map(|u| self.row(u)).collect();
        self.extensions().find(|xa| !upper.contains(&self.row(xa)))
    }

    pub fn is_closed(&self) -> bool {
        self.find_unclosed().is_none()
    }

    /// A new suffix `a·e` separating two prefixes with equal rows whose
    /// `a`-successors differ on `e`.
    pub fn find_inconsistency(&self) -> Option<Word> {
        let mut by_row: HashMap<Vec<bool>, &Word> = HashMap::new();
        for u in &self.prefixes {
            let Some(&v) = by_row.get(&self.row(u)) else {
                by_row.insert(self.row(u), u);
                continue;
            };
            for a in 0..self.alphabet.len() {
                let (ua, va) = (u.append(a), v.append(a));
                for e in &self.suffixes {
                    if self.cells[&ua.concat(e)] != self.cells[&va.concat(e)] {
                        return Some(e.prepend(a));
                    }
                }
            }
        }
        None
    }

    /// Number of distinct rows in `S`.
    pub fn num_states(&self) -> usize {
        self.prefixes.iter().map(|u| self.row(u)).collect::<HashSet<_>>().len()
    }

    /// The representative prefix of each hypothesis state, in state order:
    /// the first member of `S` carrying each distinct row.
    pub fn access_words(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        self.prefixes
            .iter()
            .filter(|u| seen.insert(self.row(u)))
            .cloned()
            .collect()
    }

    pub fn snapshot(&self) -> TableSnapshot {
        TableSnapshot {
            prefixes: self.prefixes.clone(),
            boundary: self.boundary(),
            suffixes: self.suffixes.clone(),
            entries: self.cells.iter().map(|(w, &b)| (w.clone(), b)).collect(),
        }
    }
}

/// Extends `S` until every one-symbol extension of `S` has a matching row.
pub fn close_table<T: Teacher>(table: &mut ObservationTable, oracle: &mut MembershipOracle<'_, T>) {
    while let Some(xa) = table.find_unclosed() {
        if oracle.stopped() {
            return;
        }
        table.add_prefix(xa, oracle);
    }
}

/// The candidate DFA of a closed table. States are the distinct rows of
/// `S` numbered in order of first appearance; λ's row is the initial state.
pub fn build_candidate(table: &ObservationTable) -> Result<Dfa> {
    let access = table.access_words();
    let index: HashMap<Vec<bool>, usize> = access
        .iter()
        .enumerate()
        .map(|(i, u)| (table.row(u), i))
        .collect();
    let k = table.alphabet.len();
    let mut delta = Vec::with_capacity(access.len());
    for u in &access {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let target = index.get(&table.row(&u.append(a))).ok_or(Error::TableNotClosed)?;
            row.push(*target);
        }
        delta.push(row);
    }
    let finals: Vec<usize> = access
        .iter()
        .enumerate()
        .filter(|(_, u)| table.cells[*u])
        .map(|(i, _)| i)
        .collect();
    let initial = index[&table.row(&Word::empty())];
    Dfa::new(table.alphabet.clone(), delta, initial, finals)
}

/// Rivest–Schapire counterexample analysis.
///
/// With `u_i` the access word of the state reached on the first `i`
/// symbols, `α(i) = Mem(u_i · w[i..])`. `α(0)` is `Mem(w)` and `α(|w|)` is
/// the hypothesis verdict, so they differ on a real counterexample. A
/// bisection finds `i` with `α(i) ≠ α(i+1)`; the suffix `w[i+1..]` then
/// separates `u_i·w[i]` from `u_{i+1}`.
pub fn rs_analyze<T: Teacher>(
    counterexample: &Word,
    table: &ObservationTable,
    oracle: &mut MembershipOracle<'_, T>,
) -> Result<Word> {
    let hypothesis = build_candidate(table)?;
    let access = table.access_words();
    let w = counterexample;
    let alpha = |i: usize, oracle: &mut MembershipOracle<'_, T>| {
        let u = &access[hypothesis.run(&w[..i])];
        oracle.query(&u.concat(&w.suffix_from(i)))
    };
    let first = alpha(0, oracle);
    let last = alpha(w.len(), oracle);
    if first == last {
        return Err(Error::NotCounterexample);
    }
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if alpha(mid, oracle) == first {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let suffix = w.suffix_from(hi);
    if table.suffixes().contains(&suffix) {
        // Only possible when membership answers changed mid-run.
        return Err(Error::NotCounterexample);
    }
    Ok(suffix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::ExactTeacher;

    fn tn() -> Alphabet {
        Alphabet::new(["T", "N"]).unwrap()
    }

    fn w(s: &str) -> Word {
        tn().parse_word(s).unwrap()
    }

    fn odd_t() -> Dfa {
        Dfa::new(tn(), vec![vec![1, 0], vec![0, 1]], 0, [1]).unwrap()
    }

    #[test]
    fn closing_adds_t_for_odd_token_target() {
        let mut teacher = ExactTeacher::new(odd_t());
        let mut oracle = MembershipOracle::new(&mut teacher);
        let mut t = ObservationTable::new(tn(), &mut oracle);
        assert!(!t.is_closed());
        close_table(&mut t, &mut oracle);
        assert_eq!(t.prefixes(), &[Word::empty(), w("T")]);
        assert_eq!(t.cell(&Word::empty()), Some(false));
        assert_eq!(t.cell(&w("T")), Some(true));
        assert_eq!(t.cell(&w("N")), Some(false));
        assert_eq!(t.cell(&w("TT")), Some(false));
        assert_eq!(t.cell(&w("TN")), Some(true));
        let d = build_candidate(&t).unwrap();
        assert_eq!(d.minimize(), odd_t());

        let before = t.prefixes().to_vec();
        close_table(&mut t, &mut oracle);
        assert_eq!(t.prefixes(), &before[..]);
    }

    #[test]
    fn universal_target_is_closed_at_once() {
        let mut teacher = ExactTeacher::new(Dfa::universal(tn()));
        let mut oracle = MembershipOracle::new(&mut teacher);
        let t = ObservationTable::new(tn(), &mut oracle);
        assert!(t.is_closed());
        assert_eq!(build_candidate(&t).unwrap(), Dfa::universal(tn()));
    }

    #[test]
    fn candidate_requires_closed_table() {
        let mut teacher = ExactTeacher::new(odd_t());
        let mut oracle = MembershipOracle::new(&mut teacher);
        let t = ObservationTable::new(tn(), &mut oracle);
        assert_eq!(build_candidate(&t), Err(Error::TableNotClosed));
    }

    #[test]
    fn analysis_rejects_non_counterexamples() {
        let mut teacher = ExactTeacher::new(odd_t());
        let mut oracle = MembershipOracle::new(&mut teacher);
        let mut t = ObservationTable::new(tn(), &mut oracle);
        close_table(&mut t, &mut oracle);
        assert_eq!(rs_analyze(&w("TNT"), &t, &mut oracle), Err(Error::NotCounterexample));
        // Length-one words are already decided by the λ column.
        assert_eq!(rs_analyze(&w("N"), &t, &mut oracle), Err(Error::NotCounterexample));
    }
}
