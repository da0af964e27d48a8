use super::table::TableSnapshot;
use super::{Engine, Halt, Hypothesis, MembershipOracle, Teacher};
use crate::automata::{Alphabet, Dfa, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Node {
    Leaf {
        state: usize,
        parent: Option<usize>,
    },
    Inner {
        suffix: Word,
        accept: usize,
        reject: usize,
        parent: Option<usize>,
    },
}

/// Binary tree whose inner nodes hold distinguishing suffixes and whose
/// leaves are hypothesis states (identified by access words).
#[derive(Clone, Debug, Default)]
pub struct ClassificationTree {
    nodes: Vec<Node>,
    leaves: Vec<usize>,
}

impl ClassificationTree {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    /// Walks `word` down from the root, testing `word·suffix` at each inner
    /// node, and returns the state at the leaf reached.
    pub fn sift<T: Teacher>(&self, word: &Word, oracle: &mut MembershipOracle<'_, T>) -> usize {
        if self.nodes.is_empty() {
            return 0;
        }
        let mut node = 0;
        loop {
            match &self.nodes[node] {
                Node::Leaf { state, .. } => return *state,
                Node::Inner {
                    suffix,
                    accept,
                    reject,
                    ..
                } => {
                    node = if oracle.query(&word.concat(suffix)) {
                        *accept
                    } else {
                        *reject
                    };
                }
            }
        }
    }

    fn parent(&self, node: usize) -> Option<usize> {
        match &self.nodes[node] {
            Node::Leaf { parent, .. } | Node::Inner { parent, .. } => *parent,
        }
    }

    /// Suffix at the lowest common ancestor of two distinct states.
    pub fn separator(&self, s: usize, t: usize) -> Option<&Word> {
        let mut ancestors = Vec::new();
        let mut cur = Some(self.leaves[s]);
        while let Some(n) = cur {
            ancestors.push(n);
            cur = self.parent(n);
        }
        let mut cur = self.parent(self.leaves[t]);
        while let Some(n) = cur {
            if ancestors.contains(&n) {
                return match &self.nodes[n] {
                    Node::Inner { suffix, .. } => Some(suffix),
                    Node::Leaf { .. } => None,
                };
            }
            cur = self.parent(n);
        }
        None
    }

    /// Replaces the leaf of `old` by an inner node on `suffix` whose children
    /// are `old` and the new state `new`.
    fn split(&mut self, old: usize, new: usize, suffix: Word, new_accepts: bool) {
        let at = self.leaves[old];
        let parent = self.parent(at);
        let old_leaf = self.nodes.len();
        let new_leaf = old_leaf + 1;
        self.nodes.push(Node::Leaf {
            state: old,
            parent: Some(at),
        });
        self.nodes.push(Node::Leaf {
            state: new,
            parent: Some(at),
        });
        let (accept, reject) = if new_accepts {
            (new_leaf, old_leaf)
        } else {
            (old_leaf, new_leaf)
        };
        self.nodes[at] = Node::Inner {
            suffix,
            accept,
            reject,
            parent,
        };
        self.leaves[old] = old_leaf;
        debug_assert_eq!(self.leaves.len(), new);
        self.leaves.push(new_leaf);
    }

    fn init(&mut self, lambda_accepts: bool) {
        self.nodes.push(Node::Leaf {
            state: 0,
            parent: None,
        });
        self.leaves.push(0);
        self.split(0, 1, Word::empty(), !lambda_accepts);
    }
}

pub(crate) struct KvLearner {
    alphabet: Alphabet,
    access: Vec<Word>,
    tree: ClassificationTree,
}

impl KvLearner {
    pub fn new(alphabet: Alphabet) -> Self {
        KvLearner {
            alphabet,
            access: vec![Word::empty()],
            tree: ClassificationTree::default(),
        }
    }
}

impl Engine for KvLearner {
    fn hypothesis<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        max_states: usize,
    ) -> Result<Hypothesis, Halt> {
        if self.access.len() > max_states {
            return Err(Halt::StateLimit);
        }
        let k = self.alphabet.len();
        let mut delta = Vec::with_capacity(self.access.len());
        let mut finals = Vec::new();
        for (s, u) in self.access.iter().enumerate() {
            if oracle.query(u) {
                finals.push(s);
            }
            delta.push((0..k).map(|a| self.tree.sift(&u.append(a), oracle)).collect());
            if oracle.stopped() {
                return Err(Halt::Stopped);
            }
        }
        let dfa = Dfa::new(self.alphabet.clone(), delta, 0, finals).expect("well-formed hypothesis");
        Ok(Hypothesis {
            states: dfa.num_states(),
            dfa,
            rfsa: None,
        })
    }

    fn refine<T: Teacher>(
        &mut self,
        oracle: &mut MembershipOracle<'_, T>,
        counterexample: &Word,
        hypothesis: &Hypothesis,
    ) -> Result<()> {
        let w = counterexample;
        if self.tree.is_empty() {
            // First counterexample: its membership differs from λ's.
            self.tree.init(oracle.query(&Word::empty()));
            self.access.push(w.clone());
            return Ok(());
        }
        let dfa = &hypothesis.dfa;
        for i in 1..=w.len() {
            let sifted = self.tree.sift(&w.prefix(i), oracle);
            let predicted = dfa.run(&w[..i]);
            if sifted == predicted {
                continue;
            }
            let j = i - 1;
            let old = dfa.run(&w[..j]);
            let d = self.tree.separator(sifted, predicted).ok_or(Error::NotCounterexample)?;
            let suffix = d.prepend(w[j]);
            let fresh = w.prefix(j);
            let new_accepts = oracle.query(&fresh.concat(&suffix));
            if new_accepts == oracle.query(&self.access[old].concat(&suffix)) {
                return Err(Error::NotCounterexample);
            }
            let new = self.access.len();
            self.access.push(fresh);
            self.tree.split(old, new, suffix, new_accepts);
            return Ok(());
        }
        Err(Error::NotCounterexample)
    }

    fn snapshot(&self) -> Option<TableSnapshot> {
        None
    }
}
