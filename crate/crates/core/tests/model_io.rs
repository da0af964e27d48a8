use std::path::PathBuf;

use rmc_core::{export_dot, parse_model, parse_model_doc, run_prover, Algorithm, Dfa, Error, Limits, Verdict, Word};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn herman_pieces_match_the_example() {
    let p = parse_model(&read("herman_ring.rmc")).unwrap();
    let a = p.alphabet();
    let w = |s: &str| a.parse_word(s).unwrap();
    for s in ["T", "NT", "TTT", "NNTNTNTN"] {
        assert!(p.init().accepts(&w(s)), "{s}");
    }
    for s in ["eps", "TN", "TT", "NN"] {
        assert!(!p.init().accepts(&w(s)), "{s}");
    }
    assert!(p.bad().accepts(&Word::empty()));
    assert!(p.bad().accepts(&w("NNN")));
    assert!(!p.bad().accepts(&w("NTN")));
    assert!(p.trans().relates(&w("NTNN"), &w("NTNN")), "idle");
    assert!(p.trans().relates(&w("TTNN"), &w("NNNN")), "discard");
    assert!(p.trans().relates(&w("TNNT"), &w("NNNN")), "discard across the wrap");
    assert!(p.trans().relates(&w("NTNN"), &w("NNTN")), "pass");
    assert!(p.trans().relates(&w("NNNT"), &w("TNNN")), "pass across the wrap");
    assert!(!p.trans().relates(&w("NTNN"), &w("TNNN")), "no pass left");
}

#[test]
fn empty_and_malformed_files() {
    assert!(matches!(parse_model(""), Err(Error::Parse(_))));
    let Err(Error::Parse(e)) = parse_model("alphabet: T N\ninit: T\ntrans: T/T T\nbad: N") else {
        panic!()
    };
    assert_eq!(e.line, 3);
    assert!(e.to_string().starts_with("3:"));
}

#[test]
fn unbalanced_parenthesis() {
    let Err(Error::Parse(e)) = parse_model("alphabet: T N\ninit: (T\ntrans: T/T\nbad: N\n") else {
        panic!()
    };
    assert_eq!((e.line, e.column, e.message.as_str()), (2, 7, "unclosed `(`"));
}

#[test]
fn herman_invariant_dot() {
    let p = parse_model(&read("herman_linear.rmc")).unwrap();
    let out = run_prover(&p, Algorithm::RivestSchapire, &Limits::default()).unwrap();
    let Verdict::Safe(inv) = out.verdict else { panic!() };
    let dot = export_dot(&inv);
    assert_eq!(dot.matches("shape=").count(), 2);
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert_eq!(dot.matches("doublecircle").count(), 1);
    assert_eq!(dot, export_dot(&inv));
}

#[test]
fn transducer_dot_is_sorted_and_stable() {
    let p = parse_model(&read("israeli_jalfon.rmc")).unwrap();
    let dot = export_dot(p.trans());
    assert_eq!(dot, export_dot(p.trans()));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -> ")).collect();
    assert_eq!(edges.len(), p.trans().num_transitions());
    assert!(edges.iter().all(|e| e.contains("/")));
    let empty = export_dot(&Dfa::empty(p.alphabet().clone()));
    assert!(!empty.contains("doublecircle"));
}

#[test]
fn lets_are_kept_by_the_printer() {
    let doc = parse_model_doc(&read("israeli_jalfon.rmc")).unwrap();
    let text = doc.to_string();
    assert!(text.contains("let E = (T/T + N/N)*;"), "{text}");
    assert!(text.contains("let Recv = T/T + N/T;"), "{text}");
    assert_eq!(text.matches("trans:").count(), 4);
}
