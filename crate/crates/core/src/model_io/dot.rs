use std::fmt::Write;

use crate::automata::{Alphabet, Dfa, Nfa};
use crate::transducer::Transducer;

/// Automata that can be drawn as a GraphViz digraph.
pub trait ToDot {
    fn alphabet(&self) -> &Alphabet;
    fn num_states(&self) -> usize;
    fn initial(&self) -> usize;
    fn is_final(&self, state: usize) -> bool;
    /// All `(source, label, target)` triples, in any order.
    fn labelled_edges(&self) -> Vec<(usize, String, usize)>;
}

impl ToDot for Nfa {
    fn alphabet(&self) -> &Alphabet {
        Nfa::alphabet(self)
    }

    fn num_states(&self) -> usize {
        Nfa::num_states(self)
    }

    fn initial(&self) -> usize {
        Nfa::initial(self)
    }

    fn is_final(&self, state: usize) -> bool {
        Nfa::is_final(self, state)
    }

    fn labelled_edges(&self) -> Vec<(usize, String, usize)> {
        let sigma = Nfa::alphabet(self);
        self.transitions()
            .map(|(p, a, q)| (p, sigma.symbol(a).to_string(), q))
            .collect()
    }
}

impl ToDot for Dfa {
    fn alphabet(&self) -> &Alphabet {
        Dfa::alphabet(self)
    }

    fn num_states(&self) -> usize {
        Dfa::num_states(self)
    }

    fn initial(&self) -> usize {
        Dfa::initial(self)
    }

    fn is_final(&self, state: usize) -> bool {
        Dfa::is_final(self, state)
    }

    fn labelled_edges(&self) -> Vec<(usize, String, usize)> {
        let sigma = Dfa::alphabet(self);
        (0..Dfa::num_states(self))
            .flat_map(|p| (0..sigma.len()).map(move |a| (p, sigma.symbol(a).to_string(), self.step(p, a))))
            .collect()
    }
}

impl ToDot for Transducer {
    fn alphabet(&self) -> &Alphabet {
        Transducer::alphabet(self)
    }

    fn num_states(&self) -> usize {
        Transducer::num_states(self)
    }

    fn initial(&self) -> usize {
        Transducer::initial(self)
    }

    fn is_final(&self, state: usize) -> bool {
        Transducer::is_final(self, state)
    }

    fn labelled_edges(&self) -> Vec<(usize, String, usize)> {
        let sigma = Transducer::alphabet(self);
        let name = |a: Option<usize>| a.map_or("eps", |a| sigma.symbol(a));
        (0..Transducer::num_states(self))
            .flat_map(|p| {
                self.edges(p)
                    .iter()
                    .map(move |e| (p, format!("{}/{}", name(e.input), name(e.output)), e.target))
            })
            .collect()
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// GraphViz rendering with one edge per transition, sorted by source,
/// label and target. The initial state is drawn bold, final states with a
/// double ring.
pub fn export_dot(m: &impl ToDot) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..m.num_states() {
        let shape = if m.is_final(q) { "doublecircle" } else { "circle" };
        let style = if q == m.initial() { ", style=bold" } else { "" };
        writeln!(out, "  {q} [shape={shape}{style}];").unwrap();
    }
    let mut edges = m.labelled_edges();
    edges.sort();
    edges.dedup();
    for (p, label, q) in edges {
        writeln!(out, "  {p} -> {q} [label=\"{}\"];", escape(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tn() -> Alphabet {
        Alphabet::new(["T", "N"]).unwrap()
    }

    #[test]
    fn empty_dfa_has_one_plain_node() {
        let dot = export_dot(&Dfa::empty(tn()));
        assert_eq!(dot.matches("shape=").count(), 1);
        assert!(!dot.contains("doublecircle"));
    }

    #[test]
    fn identity_transducer_labels() {
        let dot = export_dot(&Transducer::identity(tn()));
        assert!(dot.contains("0 -> 0 [label=\"T/T\"];"));
        assert!(dot.contains("0 -> 0 [label=\"N/N\"];"));
        assert!(dot.contains("doublecircle"));
    }
}
