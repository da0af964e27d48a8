use std::collections::HashMap;

use rmc_core::transducer::SymbolPair;
use rmc_core::{Alphabet, Regex};

/// Backtracking matcher over positions of a word of leaves. `leaf_at(i, l)`
/// says whether leaf `l` matches position `i`.
struct Matcher<'a, L> {
    len: usize,
    leaf_at: &'a dyn Fn(usize, &L) -> bool,
    memo: HashMap<(*const Regex<L>, usize, usize), bool>,
}

impl<L> Matcher<'_, L> {
    /// Does `r` match exactly the span `[i, j)`?
    fn span(&mut self, r: &Regex<L>, i: usize, j: usize) -> bool {
        let key = (r as *const _, i, j);
        if let Some(&b) = self.memo.get(&key) {
            return b;
        }
        let b = match r {
            Regex::Empty => false,
            Regex::Epsilon => i == j,
            Regex::Sym(l) => j == i + 1 && (self.leaf_at)(i, l),
            Regex::Concat(a, b) => (i..=j).any(|m| self.span(a, i, m) && self.span(b, m, j)),
            Regex::Union(a, b) => self.span(a, i, j) || self.span(b, i, j),
            // Either empty, or a non-empty first iteration followed by more.
            Regex::Star(a) => i == j || (i + 1..=j).any(|m| self.span(a, i, m) && self.span(r, m, j)),
            Regex::Ref(name) => panic!("unresolved reference {name}"),
        };
        self.memo.insert(key, b);
        b
    }
}

/// Whether `word` (symbol indices of `alphabet`) matches `regex`.
pub fn regex_matches(regex: &Regex, alphabet: &Alphabet, word: &[usize]) -> bool {
    let leaf = |i: usize, name: &String| alphabet.symbol(word[i]) == name;
    let mut m = Matcher {
        len: word.len(),
        leaf_at: &leaf,
        memo: HashMap::new(),
    };
    let n = m.len;
    m.span(regex, 0, n)
}

/// Whether `(x, y)` belongs to the relation of a pair regex.
pub fn pair_regex_relates(regex: &Regex<SymbolPair>, alphabet: &Alphabet, x: &[usize], y: &[usize]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let leaf = |i: usize, p: &SymbolPair| alphabet.symbol(x[i]) == p.input && alphabet.symbol(y[i]) == p.output;
    let mut m = Matcher {
        len: x.len(),
        leaf_at: &leaf,
        memo: HashMap::new(),
    };
    let n = m.len;
    m.span(regex, 0, n)
}
