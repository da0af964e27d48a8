use std::collections::{HashMap, HashSet};

use super::table::TableSnapshot;
use super::{Engine, Halt, Hypothesis, MembershipOracle, Teacher};
use crate::automata::{Alphabet, Nfa, Word};
use crate::error::{Error, Result};

type Row = Vec<bool>;

fn covered(r: &Row, s: &Row) -> bool {
    r.iter().zip(s).all(|(&x, &y)| !x || y)
}

/// Observation table for NL*: rows are compared by pointwise inclusion,
/// and hypothesis states are the prime rows of the upper part.
#[derive(Clone, Debug)]
pub struct RfsaTable {
    alphabet: Alphabet,
    upper: Vec<Word>,
    upper_set: HashSet<Word>,
    suffixes: Vec<Word>,
    cells: HashMap<Word, bool>,
}

impl RfsaTable {
    pub fn new<T: Teacher>(alphabet: Alphabet, oracle: &mut MembershipOracle<'_, T>) -> Self {
        let mut t = RfsaTable {
            alphabet,
            upper: vec![Word::empty()],
            upper_set: HashSet::from([Word::empty()]),
            suffixes: vec![Word::empty()],
            cells: HashMap::new(),
        };
        t.fill(oracle);
        t
    }

    pub fn upper(&self) -> &[Word] {
        &self.upper
    }

    pub fn suffixes(&self) -> &[Word] {
        &self.suffixes
    }

    /// `U·Σ \ U`, in discovery order.
    pub fn lower(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        self.upper
            .iter()
            .flat_map(|u| (0..self.alphabet.len()).map(move |a| u.append(a)))
            .filter(|w| !self.upper_set.contains(w) && seen.insert(w.clone()))
            .collect()
    }

    pub fn row(&self, u: &Word) -> Row {
        self.suffixes.iter().map(|e| self.cells[&u.concat(e)]).collect()
    }

    fn fill<T: Teacher>(&mut self, oracle: &mut MembershipOracle<'_, T>) {
        let mut rows = self.upper.clone();
        rows.extend(self.lower());
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

    fn add_upper<T: Teacher>(&mut self, u: Word, oracle: &mut MembershipOracle<'_, T>) {
        if self.upper_set.insert(u.clone()) {
            self.upper.push(u);
            self.fill(oracle);
        }
    }

    fn add_suffix<T: Teacher>(&mut self, e: Word, oracle: &mut MembershipOracle<'_, T>) -> bool {
        if self.suffixes.contains(&e) {
            return false;
        }
        self.suffixes.push(e);
        self.fill(oracle);
        true
    }

    fn all_rows(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = self.upper.iter().map(|u| self.row(u)).collect();
        rows.extend(self.lower().iter().map(|u| self.row(u)));
        rows.sort();
        rows.dedup();
        rows
    }

    /// A row is prime unless it is the join of the rows strictly below it.
    /// The all-zero row is the empty join and so never prime.
    fn is_prime(row: &Row, rows: &[Row]) -> bool {
        let mut join = vec![false; row.len()];
        for r in rows {
            if r != row && covered(r, row) {
                for (j, &x) in join.iter_mut().zip(r) {
                    *j |= x;
                }
            }
        }
        join != *row
    }

    /// The first lower word whose prime row is missing from the upper part.
    pub fn find_unclosed(&self) -> Option<Word> {
        let rows = self.all_rows();
        let upper: HashSet<Row> = self.upper.iter().map(|u| self.row(u)).collect();
        self.lower().into_iter().find(|w| {
            let r = self.row(w);
            !upper.contains(&r) && Self::is_prime(&r, &rows)
        })
    }

    /// A suffix `a·e` witnessing `r(u') ⊑ r(u)` but `r(u'a) ⋢ r(ua)`.
    pub fn find_inconsistency(&self) -> Option<Word> {
        for u in &self.upper {
            let ru = self.row(u);
            for v in &self.upper {
                if u == v || !covered(&self.row(v), &ru) {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    let (ua, va) = (u.append(a), v.append(a));
                    for e in &self.suffixes {
                        if self.cells[&va.concat(e)] && !self.cells[&ua.concat(e)] {
                            return Some(e.prepend(a));
                        }
                    }
                }
            }
        }
        None
    }

    /// Representatives of the distinct prime rows of the upper part.
    pub fn prime_upper(&self) -> Vec<Word> {
        let rows = self.all_rows();
        let mut seen = HashSet::new();
        self.upper
            .iter()
            .filter(|u| {
                let r = self.row(u);
                Self::is_prime(&r, &rows) && seen.insert(r)
            })
            .cloned()
            .collect()
    }

    /// The residual NFA of a closed, consistent table. A fresh initial
    /// state is added unless exactly one state is initial.
    pub fn build_rfsa(&self) -> Nfa {
        let states = self.prime_upper();
        if states.is_empty() {
            return Nfa::empty(self.alphabet.clone());
        }
        let rows: Vec<Row> = states.iter().map(|u| self.row(u)).collect();
        let lambda = self.row(&Word::empty());
        let initials: Vec<usize> = (0..states.len()).filter(|&q| covered(&rows[q], &lambda)).collect();
        let mut edges = Vec::new();
        for (p, u) in states.iter().enumerate() {
            for a in 0..self.alphabet.len() {
                let target = self.row(&u.append(a));
                for (q, r) in rows.iter().enumerate() {
                    if covered(r, &target) {
                        edges.push((p, a, q));
                    }
                }
            }
        }
        // Column 0 is λ.
        let mut finals: Vec<usize> = (0..states.len()).filter(|&q| rows[q][0]).collect();
        let n = states.len();
        let initial = if initials.len() == 1 {
            initials[0]
        } else {
            let fresh = n;
            let copied: Vec<_> = edges
                .iter()
                .filter(|(p, _, _)| initials.contains(p))
                .map(|&(_, a, q)| (fresh, a, q))
                .collect();
            edges.extend(copied);
            if initials.iter().any(|q| rows[*q][0]) {
                finals.push(fresh);
            }
            fresh
        };
        let total = if initial == n { n + 1 } else { n };
        Nfa::new(self.alphabet.clone(), total, initial, edges, finals).expect("well-formed rfsa")
    }

    pub fn snapshot(&self) -> TableSnapshot {
        TableSnapshot {
            prefixes: self.upper.clone(),
            boundary: self.lower(),
            suffixes: self.suffixes.clone(),
            entries: self.cells.iter().map(|(w, &b)| (w.clone(), b)).collect(),
        }
    }
}

pub(crate) struct NlStarLearner {
    alphabet: Alphabet,
    table: Option<RfsaTable>,
}

impl NlStarLearner {
    pub fn new(alphabet: Alphabet) -> Self {
        NlStarLearner { alphabet, table: None }
    }
}

impl Engine for NlStarLearner {
    fn hypothesis<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        max_states: usize,
    ) -> Result<Hypothesis, Halt> {
        let alphabet = self.alphabet.clone();
        let table = self.table.get_or_insert_with(|| RfsaTable::new(alphabet, oracle));
        loop {
            if oracle.stopped() {
                return Err(Halt::Stopped);
            }
            if table.upper.len() > max_states.saturating_mul(table.alphabet.len() + 1) {
                return Err(Halt::StateLimit);
            }
            if let Some(w) = table.find_unclosed() {
                table.add_upper(w, oracle);
            } else if let Some(e) = table.find_inconsistency() {
                table.add_suffix(e, oracle);
            } else {
                break;
            }
        }
        let rfsa = table.build_rfsa();
        let dfa = rfsa.determinize().minimize();
        Ok(Hypothesis {
            states: rfsa.num_states(),
            dfa,
            rfsa: Some(rfsa),
        })
    }

    fn refine<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        counterexample: &Word,
        _hypothesis: &Hypothesis,
    ) -> Result<()> {
        let table = self.table.as_mut().expect("refine before first hypothesis");
        let mut added = false;
        for i in (0..counterexample.len()).rev() {
            added |= table.add_suffix(counterexample.suffix_from(i), oracle);
        }
        if added {
            Ok(())
        } else {
            Err(Error::NotCounterexample)
        }
    }

    fn snapshot(&self) -> Option<TableSnapshot> {
        self.table.as_ref().map(RfsaTable::snapshot)
    }
}
