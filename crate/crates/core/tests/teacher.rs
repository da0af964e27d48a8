use std::path::PathBuf;

use rmc_core::learner::TableSnapshot;
use rmc_core::teacher::{CounterexampleRecord, InvariantViolation, Rule, TeacherStop};
use rmc_core::{check_invariant, parse_model, run_prover, Algorithm, Dfa, EquivalenceReply, Limits, RmcProblem, RmcTeacher, Teacher, Verdict, Word};

fn model(name: &str) -> RmcProblem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    parse_model(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn w(p: &RmcProblem, s: &str) -> Word {
    p.alphabet().parse_word(s).unwrap()
}

fn odd_tokens(p: &RmcProblem) -> Dfa {
    // state 0: even, state 1: odd
    Dfa::new(p.alphabet().clone(), vec![vec![1, 0], vec![0, 1]], 0, [1]).unwrap()
}

fn limits() -> Limits {
    Limits {
        record_trace: true,
        ..Limits::default()
    }
}

#[test]
fn herman_post_k() {
    let p = model("herman_linear.rmc");
    assert_eq!(p.post_k(0).num_states(), 1);
    assert!(p.post_k(0).finals().next().is_none());
    let two = p.post_k(2);
    for (s, expected) in [("TN", true), ("NT", true), ("TT", false), ("NN", false)] {
        assert_eq!(two.accepts(&w(&p, s)), expected, "{s}");
    }
}

#[test]
fn herman_membership() {
    let p = model("herman_linear.rmc");
    let mut t = RmcTeacher::new(&p);
    assert!(t.membership(&w(&p, "TN")));
    assert!(!t.membership(&w(&p, "TT")));
    assert!(!t.membership(&w(&p, "NNTTNN")));
    assert!(t.poll_stop().is_none());
}

#[test]
fn herman_accepts_odd_token_candidate() {
    let p = model("herman_ring.rmc");
    let mut t = RmcTeacher::new(&p);
    let v = odd_tokens(&p);
    assert_eq!(t.equivalence(&v), EquivalenceReply::Stop(TeacherStop::Safe(v.clone())));
    assert_eq!(check_invariant(&p, &v), Ok(()));
}

#[test]
fn universal_candidate_contains_bad_lambda() {
    let p = model("herman_linear.rmc");
    let all = Dfa::universal(p.alphabet().clone());
    assert_eq!(check_invariant(&p, &all), Err(InvariantViolation::ContainsBad(Word::empty())));
}

#[test]
fn israeli_jalfon_rule_one_and_two() {
    let p = model("israeli_jalfon.rmc");
    let mut t = RmcTeacher::new(&p);
    let empty = Dfa::empty(p.alphabet().clone());
    assert_eq!(t.equivalence(&empty), EquivalenceReply::Counterexample(w(&p, "TT")));
    // all words of length at least two
    let long = Dfa::new(p.alphabet().clone(), vec![vec![1, 1], vec![2, 2], vec![2, 2]], 0, [2]).unwrap();
    // NN is the shortest unreachable bad word the candidate accepts.
    assert_eq!(t.equivalence(&long), EquivalenceReply::Counterexample(w(&p, "NN")));
    assert_eq!(
        t.counterexamples(),
        &[
            CounterexampleRecord {
                word: w(&p, "TT"),
                positive: true,
                rule: Rule::NotInitial
            },
            CounterexampleRecord {
                word: w(&p, "NN"),
                positive: false,
                rule: Rule::Bad
            },
        ]
    );
}

#[test]
fn herman_rs_first_table() {
    let p = model("herman_ring.rmc");
    let out = run_prover(&p, Algorithm::RivestSchapire, &limits()).unwrap();
    assert!(matches!(out.verdict, Verdict::Safe(_)));
    assert_eq!(out.stats.equivalence_queries, 1);
    let table: &TableSnapshot = out.trace[0].table.as_ref().unwrap();
    assert_eq!(table.prefixes, vec![Word::empty(), w(&p, "T")]);
    assert_eq!(table.suffixes, vec![Word::empty()]);
    for (s, expected) in [("eps", false), ("T", true), ("N", false), ("TT", false), ("TN", true)] {
        assert_eq!(table.entry(&w(&p, s)), Some(expected), "{s}");
    }
}

#[test]
fn herman_invariant_size_for_every_dfa_learner() {
    for name in ["herman_linear.rmc", "herman_ring.rmc"] {
        let p = model(name);
        for alg in Algorithm::ALL {
            let out = run_prover(&p, alg, &limits()).unwrap();
            let Verdict::Safe(inv) = &out.verdict else {
                panic!("{name} {alg}: {:?}", out.verdict)
            };
            if alg.is_deterministic() {
                assert_eq!((inv.num_states(), inv.num_transitions()), (2, 4), "{name} {alg}");
                assert!(out.stats.equivalence_queries <= 2, "{name} {alg}");
            }
        }
    }
}

#[test]
fn israeli_jalfon_rs_run() {
    let p = model("israeli_jalfon.rmc");
    let out = run_prover(&p, Algorithm::RivestSchapire, &limits()).unwrap();
    let Verdict::Safe(inv) = &out.verdict else { panic!("{:?}", out.verdict) };
    assert_eq!((inv.num_states(), inv.num_transitions()), (4, 8));
    assert_eq!(out.stats.equivalence_queries, 3);
    let words: Vec<Word> = out.counterexamples.iter().map(|c| c.word.clone()).collect();
    assert_eq!(words, vec![w(&p, "TT"), w(&p, "NN")]);
    let suffixes = &out.trace.last().unwrap().table.as_ref().unwrap().suffixes;
    assert_eq!(suffixes, &vec![Word::empty(), w(&p, "T"), w(&p, "N")]);
}

#[test]
fn unsafe_demo() {
    let p = model("herman_unsafe_demo.rmc");
    for alg in Algorithm::ALL {
        let out = run_prover(&p, alg, &Limits::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Unsafe(w(&p, "T")), "{alg}");
    }
}

#[test]
fn token_rings_are_safe() {
    for name in ["token_ring.rmc", "token_ring_bidirectional.rmc"] {
        let p = model(name);
        for alg in Algorithm::ALL {
            let out = run_prover(&p, alg, &Limits::default()).unwrap();
            let Verdict::Safe(inv) = &out.verdict else {
                panic!("{name} {alg}: {:?}", out.verdict)
            };
            assert_eq!(check_invariant(&p, inv), Ok(()));
            if alg.is_deterministic() {
                assert_eq!(inv.num_states(), 3, "{name} {alg}");
            }
        }
    }
}

#[test]
fn zero_timeout_gives_unknown() {
    let p = model("israeli_jalfon.rmc");
    let limits = Limits {
        timeout: Some(std::time::Duration::ZERO),
        ..Limits::default()
    };
    let out = run_prover(&p, Algorithm::RivestSchapire, &limits).unwrap();
    assert_eq!(out.verdict, Verdict::Unknown("timeout".into()));
}

#[test]
fn state_limit_gives_unknown() {
    let p = model("israeli_jalfon.rmc");
    let limits = Limits {
        max_states: 1,
        ..Limits::default()
    };
    let out = run_prover(&p, Algorithm::RivestSchapire, &limits).unwrap();
    assert_eq!(out.verdict, Verdict::Unknown("state limit".into()));
}
