//! Brute-force reference implementations used to cross-check the automata,
//! transducer and teacher code. Nothing here shares logic with `rmc-core`
//! beyond its plain data types.

mod matcher;
mod random;
mod reach;

pub use matcher::{pair_regex_relates, regex_matches};
pub use random::{random_dfa, random_pair_regex, random_regex};
pub use reach::{brute_post, brute_reachable, brute_relation, minimal_state_count};
