//! Active automata learning against an abstract teacher.
//!
//! Five engines share one driver loop: classic L* (counterexample prefixes
//! join the prefix set), L* with all counterexample suffixes added as
//! columns, Rivest–Schapire (one suffix found by binary search),
//! Kearns–Vazirani (classification tree) and NL* (residual NFA, determinized
//! before each equivalence query).

mod exact;
mod kv;
mod lstar;
mod nlstar;
mod oracle;
mod table;

use std::fmt;
use std::str::FromStr;

pub use exact::ExactTeacher;
pub use kv::ClassificationTree;
pub use nlstar::RfsaTable;
pub use oracle::MembershipOracle;
pub use table::{build_candidate, close_table, rs_analyze, ObservationTable, TableSnapshot};

use crate::automata::{Alphabet, Dfa, Nfa, Word};
use crate::error::Error;

/// Answer to an equivalence query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceReply<S> {
    Equal,
    /// A word in the symmetric difference of hypothesis and target.
    Counterexample(Word),
    /// The teacher ends the run with its own payload.
    Stop(S),
}

/// The two queries a learner may ask.
///
/// Membership answers must be stable for the whole run.
pub trait Teacher {
    type Stop;

    fn alphabet(&self) -> &Alphabet;

    fn membership(&mut self, word: &Word) -> bool;

    fn equivalence(&mut self, hypothesis: &Dfa) -> EquivalenceReply<Self::Stop>;

    /// Polled between queries; a `Some` ends the run at the next
    /// opportunity.
    fn poll_stop(&mut self) -> Option<Self::Stop> {
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LearnerStats {
    /// Distinct words sent to the teacher.
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    /// Hypothesis rounds started.
    pub iterations: usize,
    /// States of the last hypothesis (NFA states for NL*).
    pub final_states: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    LStar,
    LStarAllSuffixes,
    RivestSchapire,
    KearnsVazirani,
    NLStar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::RivestSchapire,
        Algorithm::LStar,
        Algorithm::LStarAllSuffixes,
        Algorithm::KearnsVazirani,
        Algorithm::NLStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::LStar => "lstar",
            Algorithm::LStarAllSuffixes => "lstarc",
            Algorithm::RivestSchapire => "rs",
            Algorithm::KearnsVazirani => "kv",
            Algorithm::NLStar => "nlstar",
        }
    }

    /// Whether hypotheses are DFAs built directly by the learner.
    pub fn is_deterministic(self) -> bool {
        self != Algorithm::NLStar
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown learner {s:?} (expected rs, lstar, lstarc, kv or nlstar)"))
    }
}

#[derive(Clone, Debug)]
pub struct LearnConfig {
    /// Hypotheses larger than this end the run.
    pub max_states: usize,
    pub max_iterations: usize,
    /// Keep every hypothesis (and table snapshot, where there is a table).
    pub record_trace: bool,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            max_states: 10_000,
            max_iterations: usize::MAX,
            record_trace: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnEnd<S> {
    Equal,
    Stopped(S),
    StateLimit,
    IterationLimit,
    /// The teacher returned a word the hypothesis already classifies
    /// correctly.
    InvalidCounterexample(Word),
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub hypothesis: Dfa,
    pub table: Option<TableSnapshot>,
    pub counterexample: Option<Word>,
}

#[derive(Clone, Debug)]
pub struct LearnOutcome<S> {
    /// Last hypothesis handed to the teacher (determinized for NL*).
    pub hypothesis: Dfa,
    /// The residual NFA behind `hypothesis`, for NL*.
    pub rfsa: Option<Nfa>,
    pub stats: LearnerStats,
    pub end: LearnEnd<S>,
    pub trace: Vec<TraceStep>,
}

pub(crate) struct Hypothesis {
    pub dfa: Dfa,
    pub rfsa: Option<Nfa>,
    pub states: usize,
}

pub(crate) enum Halt {
    Stopped,
    StateLimit,
}

pub(crate) trait Engine {
    fn hypothesis<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        max_states: usize,
    ) -> Result<Hypothesis, Halt>;

    fn refine<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        counterexample: &Word,
        hypothesis: &Hypothesis,
    ) -> Result<(), Error>;

    fn snapshot(&self) -> Option<TableSnapshot>;
}

/// Runs `algorithm` against `teacher` until the teacher accepts a
/// hypothesis, stops the run, or a limit is hit.
pub fn run_learner<T: Teacher>(
    algorithm: Algorithm,
    teacher: &mut T,
    config: &LearnConfig,
) -> LearnOutcome<T::Stop> {
    let alphabet = teacher.alphabet().clone();
    match algorithm {
        Algorithm::LStar => drive(lstar::TableLearner::classic(alphabet), teacher, config),
        Algorithm::LStarAllSuffixes => drive(lstar::TableLearner::all_suffixes(alphabet), teacher, config),
        Algorithm::RivestSchapire => drive(lstar::TableLearner::rivest_schapire(alphabet), teacher, config),
        Algorithm::KearnsVazirani => drive(kv::KvLearner::new(alphabet), teacher, config),
        Algorithm::NLStar => drive(nlstar::NlStarLearner::new(alphabet), teacher, config),
    }
}

fn drive<E: Engine, T: Teacher>(mut engine: E, teacher: &mut T, config: &LearnConfig) -> LearnOutcome<T::Stop> {
    let alphabet = teacher.alphabet().clone();
    let mut oracle = MembershipOracle::new(teacher);
    let mut stats = LearnerStats::default();
    let mut trace = Vec::new();
    let mut last = Hypothesis {
        dfa: Dfa::empty(alphabet),
        rfsa: None,
        states: 0,
    };

    let end = loop {
        if stats.iterations >= config.max_iterations {
            break LearnEnd::IterationLimit;
        }
        stats.iterations += 1;
        let hyp = match engine.hypothesis(&mut oracle, config.max_states) {
            Ok(h) => h,
            Err(Halt::StateLimit) => break LearnEnd::StateLimit,
            Err(Halt::Stopped) => break LearnEnd::Stopped(oracle.take_stop().expect("halted without stop")),
        };
        if let Some(stop) = oracle.take_stop() {
            break LearnEnd::Stopped(stop);
        }
        stats.final_states = hyp.states;
        last = hyp;
        if last.states > config.max_states {
            break LearnEnd::StateLimit;
        }

        stats.equivalence_queries += 1;
        let reply = oracle.teacher().equivalence(&last.dfa);
        if config.record_trace {
            trace.push(TraceStep {
                hypothesis: last.dfa.clone(),
                table: engine.snapshot(),
                counterexample: match &reply {
                    EquivalenceReply::Counterexample(w) => Some(w.clone()),
                    _ => None,
                },
            });
        }
        match reply {
            EquivalenceReply::Equal => break LearnEnd::Equal,
            EquivalenceReply::Stop(s) => break LearnEnd::Stopped(s),
            EquivalenceReply::Counterexample(w) => {
                let member = oracle.query(&w);
                if let Some(stop) = oracle.take_stop() {
                    break LearnEnd::Stopped(stop);
                }
                if member == last.dfa.accepts(&w) {
                    break LearnEnd::InvalidCounterexample(w);
                }
                if let Err(e) = engine.refine(&mut oracle, &w, &last) {
                    debug_assert!(matches!(e, Error::NotCounterexample), "{e}");
                    break LearnEnd::InvalidCounterexample(w);
                }
            }
        }
    };

    stats.membership_queries = oracle.queries();
    LearnOutcome {
        hypothesis: last.dfa,
        rfsa: last.rfsa,
        stats,
        end,
        trace,
    }
}
