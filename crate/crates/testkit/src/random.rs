use rand::Rng;

use rmc_core::transducer::SymbolPair;
use rmc_core::{Alphabet, Dfa, Regex};

/// A total DFA with `states` states, uniformly random transitions and each
/// state final with probability one half.
pub fn random_dfa(rng: &mut impl Rng, alphabet: &Alphabet, states: usize) -> Dfa {
    let delta = (0..states)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), delta, 0, finals).expect("valid random dfa")
}

fn random_tree<L>(rng: &mut impl Rng, depth: usize, leaf: &mut impl FnMut(&mut dyn rand::RngCore) -> L) -> Regex<L>
where
    L: Clone,
{
    let choice = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..7) };
    match choice {
        0 => Regex::Epsilon,
        1 | 2 => Regex::Sym(leaf(rng)),
        3 | 4 => random_tree(rng, depth - 1, leaf).concat(random_tree(rng, depth - 1, leaf)),
        5 => random_tree(rng, depth - 1, leaf).union(random_tree(rng, depth - 1, leaf)),
        _ => random_tree(rng, depth - 1, leaf).star(),
    }
}

/// A random regex of nesting depth at most `depth`.
pub fn random_regex(rng: &mut impl Rng, alphabet: &Alphabet, depth: usize) -> Regex {
    let mut leaf = |r: &mut dyn rand::RngCore| alphabet.symbol(r.gen_range(0..alphabet.len())).to_string();
    random_tree(rng, depth, &mut leaf)
}

/// A random pair regex of nesting depth at most `depth`.
pub fn random_pair_regex(rng: &mut impl Rng, alphabet: &Alphabet, depth: usize) -> Regex<SymbolPair> {
    let mut leaf = |r: &mut dyn rand::RngCore| {
        let i = alphabet.symbol(r.gen_range(0..alphabet.len()));
        let o = alphabet.symbol(r.gen_range(0..alphabet.len()));
        SymbolPair::new(i, o)
    };
    random_tree(rng, depth, &mut leaf)
}
