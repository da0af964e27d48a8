use super::table::{build_candidate, rs_analyze, ObservationTable, TableSnapshot};
use super::{Engine, Halt, Hypothesis, MembershipOracle, Teacher};
use crate::automata::{Alphabet, Word};
use crate::error::Result;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Refinement {
    /// Angluin: every prefix of the counterexample joins `S`.
    Prefixes,
    /// Every suffix of the counterexample joins `E`.
    AllSuffixes,
    /// One suffix, found by binary search.
    RivestSchapire,
}

pub(crate) struct TableLearner {
    alphabet: Alphabet,
    table: Option<ObservationTable>,
    refinement: Refinement,
}

impl TableLearner {
    fn with(alphabet: Alphabet, refinement: Refinement) -> Self {
        TableLearner {
            alphabet,
            table: None,
            refinement,
        }
    }

    pub fn classic(alphabet: Alphabet) -> Self {
        Self::with(alphabet, Refinement::Prefixes)
    }

    pub fn all_suffixes(alphabet: Alphabet) -> Self {
        Self::with(alphabet, Refinement::AllSuffixes)
    }

    pub fn rivest_schapire(alphabet: Alphabet) -> Self {
        Self::with(alphabet, Refinement::RivestSchapire)
    }
}

impl Engine for TableLearner {
    fn hypothesis<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        max_states: usize,
    ) -> Result<Hypothesis, Halt> {
        let alphabet = self.alphabet.clone();
        let table = self
            .table
            .get_or_insert_with(|| ObservationTable::new(alphabet, oracle));
        // Only the prefix-adding variant can produce equal rows in S, so
        // only it needs the consistency repair.
        let check_consistency = self.refinement == Refinement::Prefixes;
        loop {
            if oracle.stopped() {
                return Err(Halt::Stopped);
            }
            if table.num_states() > max_states {
                return Err(Halt::StateLimit);
            }
            if let Some(xa) = table.find_unclosed() {
                table.add_prefix(xa, oracle);
            } else if let Some(e) = check_consistency.then(|| table.find_inconsistency()).flatten() {
                table.add_suffix(e, oracle);
            } else {
                break;
            }
        }
        let dfa = build_candidate(table).expect("table is closed");
        Ok(Hypothesis {
            states: dfa.num_states(),
            dfa,
            rfsa: None,
        })
    }

    fn refine<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        counterexample: &Word,
        _hypothesis: &Hypothesis,
    ) -> Result<()> {
        let table = self.table.as_mut().expect("refine before first hypothesis");
        match self.refinement {
            Refinement::Prefixes => {
                for i in 1..=counterexample.len() {
                    table.add_prefix(counterexample.prefix(i), oracle);
                }
            }
            Refinement::AllSuffixes => {
                for i in (0..counterexample.len()).rev() {
                    table.add_suffix(counterexample.suffix_from(i), oracle);
                }
            }
            Refinement::RivestSchapire => {
                let e = rs_analyze(counterexample, table, oracle)?;
                table.add_suffix(e, oracle);
            }
        }
        Ok(())
    }

    fn snapshot(&self) -> Option<TableSnapshot> {
        self.table.as_ref().map(ObservationTable::snapshot)
    }
}
