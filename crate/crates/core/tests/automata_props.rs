use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rmc_core::automata::{compile_regex, includes};
use rmc_core::{Alphabet, Word};
use rmc_testkit::{minimal_state_count, random_dfa, random_regex, regex_matches};

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regex_pipeline_matches_brute_force(seed in any::<u64>(), k in 2usize..=3, depth in 0usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = alphabet(k);
        let r = random_regex(&mut rng, &sigma, depth);
        let nfa = compile_regex(&r, &sigma).unwrap();
        let dfa = nfa.determinize();
        let min = dfa.minimize();
        for w in Word::all_up_to(k, 6) {
            let expected = regex_matches(&r, &sigma, &w);
            prop_assert_eq!(nfa.accepts(&w), expected, "nfa {} on {:?}", r, w);
            prop_assert_eq!(dfa.accepts(&w), expected, "dfa {} on {:?}", r, w);
            prop_assert_eq!(min.accepts(&w), expected, "min {} on {:?}", r, w);
        }
    }

    #[test]
    fn minimize_is_idempotent_and_minimal(seed in any::<u64>(), k in 2usize..=3, n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_dfa(&mut rng, &alphabet(k), n);
        let m = d.minimize();
        prop_assert_eq!(m.minimize(), m.clone());
        prop_assert_eq!(m.num_states(), minimal_state_count(&d));
        for w in Word::all_up_to(k, 6) {
            prop_assert_eq!(m.accepts(&w), d.accepts(&w));
        }
    }

    #[test]
    fn includes_agrees_with_enumeration(seed in any::<u64>(), k in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = alphabet(k);
        let a = compile_regex(&random_regex(&mut rng, &sigma, 3), &sigma).unwrap();
        let b = random_dfa(&mut rng, &sigma, 3);
        let witness = includes(&a, &b).unwrap();
        let first_missing = Word::all_up_to(k, 6).find(|w| a.accepts(w) && !b.accepts(w));
        match witness {
            // Enumeration is in shortlex order, so the first hit is the
            // shortlex-least witness when one is that short.
            Some(w) if w.len() <= 6 => prop_assert_eq!(Some(w), first_missing),
            Some(w) => {
                prop_assert!(first_missing.is_none());
                prop_assert!(a.accepts(&w) && !b.accepts(&w));
            }
            None => prop_assert!(first_missing.is_none()),
        }
    }

    #[test]
    fn shortest_word_is_shortlex_least(seed in any::<u64>(), k in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = alphabet(k);
        let r = random_regex(&mut rng, &sigma, 4);
        let nfa = compile_regex(&r, &sigma).unwrap();
        let first = Word::all_up_to(k, 6).find(|w| regex_matches(&r, &sigma, w));
        match nfa.shortest_word() {
            Some(w) if w.len() <= 6 => prop_assert_eq!(Some(w), first),
            Some(_) => prop_assert!(first.is_none()),
            None => prop_assert!(first.is_none()),
        }
        prop_assert_eq!(nfa.is_empty(), nfa.shortest_word().is_none());
    }

    #[test]
    fn distinguishing_word_separates(seed in any::<u64>(), k in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = alphabet(k);
        let a = random_dfa(&mut rng, &sigma, 4);
        let b = random_dfa(&mut rng, &sigma, 4);
        let first = Word::all_up_to(k, 7).find(|w| a.accepts(w) != b.accepts(w));
        let d = a.distinguishing_word(&b).unwrap();
        // Two 4-state DFAs that differ do so on a word shorter than 8.
        prop_assert_eq!(d.clone(), first);
        prop_assert_eq!(a.language_eq(&b), d.is_none());
    }
}

#[test]
fn empty_language_is_one_sink_state() {
    let sigma = alphabet(2);
    let e = rmc_core::Nfa::empty(sigma.clone()).determinize().minimize();
    assert_eq!(e.num_states(), 1);
    assert_eq!(e.finals().count(), 0);
}

#[test]
fn shortlex_witnesses_from_spec_examples() {
    let sigma = Alphabet::new(["T", "N"]).unwrap();
    let all = rmc_core::Nfa::universal(sigma.clone());
    let n_star = compile_regex(&rmc_core::Regex::sym("N").star(), &sigma).unwrap().determinize();
    assert_eq!(includes(&all, &n_star).unwrap(), Some(sigma.parse_word("T").unwrap()));
    assert_eq!(all.shortest_word(), Some(Word::empty()));
}
