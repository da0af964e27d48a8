//! Safety proofs for parameterised systems in regular model checking.
//!
//! Configurations are words, sets of configurations are regular languages and
//! the transition relation is a length-preserving transducer. Safety is shown
//! by learning a regular inductive invariant with an L*-family learner that
//! talks to a teacher built around bounded reachability; a reachable bad
//! configuration is reported when one exists.

pub mod automata;
pub mod error;
pub mod learner;
pub mod model_io;
pub mod teacher;
pub mod transducer;

pub use automata::{Alphabet, Dfa, Nfa, Regex, Word};
pub use error::{Error, Result};
pub use learner::{run_learner, Algorithm, EquivalenceReply, LearnConfig, LearnerStats, Teacher};
pub use model_io::{export_dot, parse_model, parse_model_doc, ModelDoc};
pub use teacher::{check_invariant, run_prover, Limits, RmcProblem, RmcTeacher, Verdict};
pub use transducer::{PairRegex, Transducer};
