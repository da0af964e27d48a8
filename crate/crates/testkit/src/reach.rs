use std::collections::{HashSet, VecDeque};

use rmc_core::{Dfa, ModelDoc, Word};

use crate::{pair_regex_relates, regex_matches};

fn words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every related pair `(x, y)` with `|x| = |y| = len`, by enumeration.
pub fn brute_relation(doc: &ModelDoc, len: usize) -> Vec<(Word, Word)> {
    let trans = doc.trans_regex().expect("resolvable model");
    let all = words(doc.alphabet.len(), len);
    let mut out = Vec::new();
    for x in &all {
        for y in &all {
            if pair_regex_relates(&trans, &doc.alphabet, x, y) {
                out.push((Word::from(x.clone()), Word::from(y.clone())));
            }
        }
    }
    out
}

/// One step of the transition relation from `from`, by enumeration.
pub fn brute_post(doc: &ModelDoc, from: &HashSet<Word>, len: usize) -> HashSet<Word> {
    brute_relation(doc, len)
        .into_iter()
        .filter(|(x, _)| from.contains(x))
        .map(|(_, y)| y)
        .collect()
}

/// Configurations of length `len` reachable from the initial ones, by
/// breadth-first search over the explicit configuration graph.
pub fn brute_reachable(doc: &ModelDoc, len: usize) -> HashSet<Word> {
    let init = doc.init_regex().expect("resolvable model");
    let relation = brute_relation(doc, len);
    let mut seen: HashSet<Word> = words(doc.alphabet.len(), len)
        .into_iter()
        .filter(|w| regex_matches(&init, &doc.alphabet, w))
        .map(Word::from)
        .collect();
    let mut queue: VecDeque<Word> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for (a, b) in &relation {
            if *a == x && seen.insert(b.clone()) {
                queue.push_back(b.clone());
            }
        }
    }
    seen
}

/// Number of Myhill–Nerode classes among the reachable states of `dfa`:
/// two states are merged iff no word shorter than the state count tells
/// them apart.
pub fn minimal_state_count(dfa: &Dfa) -> usize {
    let k = dfa.alphabet().len();
    let mut reachable = vec![dfa.initial()];
    let mut i = 0;
    while i < reachable.len() {
        for a in 0..k {
            let q = dfa.step(reachable[i], a);
            if !reachable.contains(&q) {
                reachable.push(q);
            }
        }
        i += 1;
    }
    let tests: Vec<Vec<usize>> = (0..dfa.num_states()).flat_map(|l| words(k, l)).collect();
    let signature = |q: usize| -> Vec<bool> {
        tests
            .iter()
            .map(|w| dfa.is_final(w.iter().fold(q, |s, &a| dfa.step(s, a))))
            .collect()
    };
    reachable.into_iter().map(signature).collect::<HashSet<_>>().len()
}
