//! The RMC teacher: membership by bounded reachability, equivalence by the
//! three invariant conditions.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::automata::{includes, Alphabet, Dfa, Nfa, Word};
use crate::error::{Error, Result};
use crate::learner::{run_learner, Algorithm, EquivalenceReply, LearnConfig, LearnEnd, LearnerStats, Teacher, TraceStep};
use crate::transducer::{inductive_violation, Transducer};

/// Initial configurations `I`, transition relation `T` and bad
/// configurations `B` over one alphabet.
#[derive(Clone, Debug)]
pub struct RmcProblem {
    alphabet: Alphabet,
    init: Nfa,
    trans: Transducer,
    bad: Nfa,
}

impl RmcProblem {
    pub fn new(init: Nfa, trans: Transducer, bad: Nfa) -> Result<Self> {
        let alphabet = init.alphabet().clone();
        if trans.alphabet() != &alphabet || bad.alphabet() != &alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if !trans.is_length_preserving() {
            return Err(Error::NotLengthPreserving);
        }
        Ok(RmcProblem {
            alphabet,
            init,
            trans,
            bad,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn init(&self) -> &Nfa {
        &self.init
    }

    pub fn trans(&self) -> &Transducer {
        &self.trans
    }

    pub fn bad(&self) -> &Nfa {
        &self.bad
    }

    /// Minimal DFA of the configurations of length `k` reachable from `I`.
    pub fn post_k(&self, k: usize) -> Dfa {
        self.post_k_until(k, None).expect("no deadline")
    }

    /// Every iterate of `X ↦ X ∪ T(X)` from `I ∩ Σ^k`, ending with the
    /// fixpoint.
    pub fn post_k_iterates(&self, k: usize) -> Vec<Dfa> {
        let mut rounds = Vec::new();
        self.fixpoint(k, None, &mut |d| rounds.push(d.clone()));
        rounds
    }

    /// `None` if `deadline` passes before the fixpoint is reached.
    fn post_k_until(&self, k: usize, deadline: Option<Instant>) -> Option<Dfa> {
        self.fixpoint(k, deadline, &mut |_| {})
    }

    fn fixpoint(&self, k: usize, deadline: Option<Instant>, on_round: &mut dyn FnMut(&Dfa)) -> Option<Dfa> {
        let slice = Nfa::all_of_length(self.alphabet.clone(), k);
        let mut current = self
            .init
            .intersect(&slice)
            .expect("shared alphabet")
            .determinize()
            .minimize();
        on_round(&current);
        loop {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return None;
            }
            let nfa = current.to_nfa();
            let step = self.trans.post_image(&nfa).expect("validated problem");
            let next = nfa.union(&step).expect("shared alphabet").determinize().minimize();
            if next == current {
                return Some(current);
            }
            on_round(&next);
            current = next;
        }
    }
}

/// Which condition of the equivalence check produced a counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// An initial configuration outside the hypothesis.
    NotInitial,
    /// A bad configuration inside the hypothesis, found unreachable.
    Bad,
    /// One end of a transition leaving the hypothesis.
    Inductive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleRecord {
    pub word: Word,
    /// Whether the word should be added to the hypothesis.
    pub positive: bool,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TeacherStop {
    Safe(Dfa),
    Unsafe(Word),
    Timeout,
}

/// Teacher whose target is the reachable set `T*(I)` but which accepts any
/// inductive invariant it is shown.
pub struct RmcTeacher<'p> {
    problem: &'p RmcProblem,
    cache: HashMap<usize, Dfa>,
    pending_unsafe: Option<Word>,
    deadline: Option<Instant>,
    timed_out: bool,
    counterexamples: Vec<CounterexampleRecord>,
}

impl<'p> RmcTeacher<'p> {
    pub fn new(problem: &'p RmcProblem) -> Self {
        RmcTeacher {
            problem,
            cache: HashMap::new(),
            pending_unsafe: None,
            deadline: None,
            timed_out: false,
            counterexamples: Vec::new(),
        }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn problem(&self) -> &RmcProblem {
        self.problem
    }

    /// Counterexamples returned so far, oldest first.
    pub fn counterexamples(&self) -> &[CounterexampleRecord] {
        &self.counterexamples
    }

    pub fn pending_unsafe(&self) -> Option<&Word> {
        self.pending_unsafe.as_ref()
    }

    fn expired(&mut self) -> bool {
        if !self.timed_out && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// Cached `Post^k`. The first time a length is computed, a reachable bad
    /// configuration of that length is recorded as pending.
    pub fn post_k(&mut self, k: usize) -> Option<&Dfa> {
        if !self.cache.contains_key(&k) {
            if self.expired() {
                return None;
            }
            let Some(dfa) = self.problem.post_k_until(k, self.deadline) else {
                self.timed_out = true;
                return None;
            };
            if self.pending_unsafe.is_none() {
                self.pending_unsafe = dfa
                    .to_nfa()
                    .intersect(&self.problem.bad)
                    .expect("shared alphabet")
                    .shortest_word();
            }
            self.cache.insert(k, dfa);
        }
        self.cache.get(&k)
    }

    fn counterexample(&mut self, word: Word, positive: bool, rule: Rule) -> EquivalenceReply<TeacherStop> {
        self.counterexamples.push(CounterexampleRecord {
            word: word.clone(),
            positive,
            rule,
        });
        EquivalenceReply::Counterexample(word)
    }
}

impl Teacher for RmcTeacher<'_> {
    type Stop = TeacherStop;

    fn alphabet(&self) -> &Alphabet {
        &self.problem.alphabet
    }

    fn membership(&mut self, word: &Word) -> bool {
        self.post_k(word.len()).is_some_and(|d| d.accepts(word))
    }

    fn equivalence(&mut self, hypothesis: &Dfa) -> EquivalenceReply<TeacherStop> {
        if let Some(stop) = self.poll_stop() {
            return EquivalenceReply::Stop(stop);
        }
        let p = self.problem;
        if let Some(w) = includes(&p.init, hypothesis).expect("shared alphabet") {
            return self.counterexample(w, true, Rule::NotInitial);
        }
        let bad_inside = hypothesis.to_nfa().intersect(&p.bad).expect("shared alphabet");
        if let Some(w) = bad_inside.shortest_word() {
            let member = self.membership(&w);
            if let Some(stop) = self.poll_stop() {
                return EquivalenceReply::Stop(stop);
            }
            if member {
                return EquivalenceReply::Stop(TeacherStop::Unsafe(w));
            }
            return self.counterexample(w, false, Rule::Bad);
        }
        if let Some((from, to)) = inductive_violation(&p.trans, hypothesis).expect("shared alphabet") {
            let member = self.membership(&from);
            if let Some(stop) = self.poll_stop() {
                return EquivalenceReply::Stop(stop);
            }
            return if member {
                self.counterexample(to, true, Rule::Inductive)
            } else {
                self.counterexample(from, false, Rule::Inductive)
            };
        }
        EquivalenceReply::Stop(TeacherStop::Safe(hypothesis.clone()))
    }

    fn poll_stop(&mut self) -> Option<TeacherStop> {
        if self.expired() {
            return Some(TeacherStop::Timeout);
        }
        self.pending_unsafe.take().map(TeacherStop::Unsafe)
    }
}

/// The invariant condition a candidate fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("condition (1) fails: initial configuration {0:?} is not covered")]
    NotInitial(Word),
    #[error("condition (2) fails: bad configuration {0:?} is covered")]
    ContainsBad(Word),
    #[error("condition (3) fails: {from:?} steps to {to:?}, which is not covered")]
    NotInductive { from: Word, to: Word },
    #[error("candidate alphabet differs from the model's")]
    AlphabetMismatch,
}

/// Checks `I ⊆ V`, `V ∩ B = ∅` and `T(V) ⊆ V`.
pub fn check_invariant(p: &RmcProblem, v: &Dfa) -> Result<(), InvariantViolation> {
    if v.alphabet() != &p.alphabet {
        return Err(InvariantViolation::AlphabetMismatch);
    }
    if let Some(w) = includes(&p.init, v).expect("shared alphabet") {
        return Err(InvariantViolation::NotInitial(w));
    }
    let vn = v.to_nfa();
    if let Some(w) = vn.intersect(&p.bad).expect("shared alphabet").shortest_word() {
        return Err(InvariantViolation::ContainsBad(w));
    }
    let image = p.trans.post_image(&vn).expect("validated problem");
    if let Some(to) = includes(&image, v).expect("shared alphabet") {
        let target = Nfa::word(p.alphabet.clone(), &to).expect("word over alphabet");
        let from = p
            .trans
            .pre_image(&target)
            .and_then(|pre| pre.intersect(&vn))
            .expect("validated problem")
            .shortest_word()
            .expect("image word has a preimage in the candidate");
        return Err(InvariantViolation::NotInductive { from, to });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A minimal DFA of an inductive invariant disjoint from `B`.
    Safe(Dfa),
    /// A reachable bad configuration.
    Unsafe(Word),
    Unknown(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Safe(_) => "SAFE",
            Verdict::Unsafe(_) => "UNSAFE",
            Verdict::Unknown(_) => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct Limits {
    /// Wall-clock budget; `None` for no limit.
    pub timeout: Option<Duration>,
    pub max_states: usize,
    pub max_iterations: usize,
    pub record_trace: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            timeout: Some(Duration::from_secs(60)),
            max_states: 10_000,
            max_iterations: usize::MAX,
            record_trace: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProverOutcome {
    pub verdict: Verdict,
    pub stats: LearnerStats,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub trace: Vec<TraceStep>,
    pub elapsed: Duration,
}

/// Learns an invariant for `p` with `algorithm`, or finds a reachable bad
/// configuration. Both kinds of answer are re-validated before returning.
pub fn run_prover(p: &RmcProblem, algorithm: Algorithm, limits: &Limits) -> Result<ProverOutcome> {
    let start = Instant::now();
    let mut teacher = RmcTeacher::new(p);
    if let Some(t) = limits.timeout {
        teacher = teacher.with_deadline(start + t);
    }
    let config = LearnConfig {
        max_states: limits.max_states,
        max_iterations: limits.max_iterations,
        record_trace: limits.record_trace,
    };
    let outcome = run_learner(algorithm, &mut teacher, &config);
    let verdict = match outcome.end {
        LearnEnd::Stopped(TeacherStop::Safe(candidate)) => {
            let invariant = candidate.minimize();
            check_invariant(p, &invariant).map_err(|e| Error::Unsound(e.to_string()))?;
            Verdict::Safe(invariant)
        }
        LearnEnd::Stopped(TeacherStop::Unsafe(w)) => {
            if !(p.post_k(w.len()).accepts(&w) && p.bad.accepts(&w)) {
                return Err(Error::Unsound(format!("witness {w:?} is not a reachable bad configuration")));
            }
            Verdict::Unsafe(w)
        }
        LearnEnd::Stopped(TeacherStop::Timeout) => Verdict::Unknown("timeout".into()),
        LearnEnd::StateLimit => Verdict::Unknown("state limit".into()),
        LearnEnd::IterationLimit => Verdict::Unknown("iteration limit".into()),
        LearnEnd::Equal => Verdict::Unknown("teacher accepted without a verdict".into()),
        LearnEnd::InvalidCounterexample(w) => Verdict::Unknown(format!("learner rejected counterexample {w:?}")),
    };
    Ok(ProverOutcome {
        verdict,
        stats: outcome.stats,
        counterexamples: teacher.counterexamples().to_vec(),
        trace: outcome.trace,
        elapsed: start.elapsed(),
    })
}
