//! Thompson construction followed by λ-elimination, shared by plain regexes
//! and pair regexes.

use super::Regex;
use crate::error::{Error, Result};

struct Builder<L> {
    eps: Vec<Vec<usize>>,
    edges: Vec<Vec<(L, usize)>>,
}

impl<L: Copy> Builder<L> {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the (entry, exit) pair of the fragment for `r`.
    fn build<M>(&mut self, r: &Regex<M>, leaf: &mut dyn FnMut(&M) -> Result<L>) -> Result<(usize, usize)> {
        let (s, t) = (self.state(), self.state());
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(t),
            Regex::Sym(m) => {
                let l = leaf(m)?;
                self.edges[s].push((l, t));
            }
            Regex::Concat(a, b) => {
                let (a0, a1) = self.build(a, leaf)?;
                let (b0, b1) = self.build(b, leaf)?;
                self.eps[s].push(a0);
                self.eps[a1].push(b0);
                self.eps[b1].push(t);
            }
            Regex::Union(a, b) => {
                let (a0, a1) = self.build(a, leaf)?;
                let (b0, b1) = self.build(b, leaf)?;
                self.eps[s].extend([a0, b0]);
                self.eps[a1].push(t);
                self.eps[b1].push(t);
            }
            Regex::Star(a) => {
                let (a0, a1) = self.build(a, leaf)?;
                self.eps[s].extend([a0, t]);
                self.eps[a1].extend([a0, t]);
            }
            Regex::Ref(name) => return Err(Error::UnresolvedRef(name.clone())),
        }
        Ok((s, t))
    }

    fn closure(&self, from: usize) -> Vec<usize> {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = vec![from];
        let mut out = Vec::new();
        seen[from] = true;
        while let Some(p) = stack.pop() {
            out.push(p);
            for &q in &self.eps[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        out
    }
}

/// Compiles `regex` to a λ-free automaton whose initial state is 0 and whose
/// states are all reachable. Returns the final flags and per-state edges.
pub(crate) fn compile<M, L: Copy>(
    regex: &Regex<M>,
    leaf: &mut dyn FnMut(&M) -> Result<L>,
) -> Result<(Vec<bool>, Vec<Vec<(L, usize)>>)> {
    let mut b = Builder {
        eps: Vec::new(),
        edges: Vec::new(),
    };
    let (start, accept) = b.build(regex, leaf)?;

    // Only the start state and targets of labelled edges survive
    // elimination; everything else is reached through λ alone.
    let mut map = vec![usize::MAX; b.eps.len()];
    let mut order = vec![start];
    map[start] = 0;
    let mut finals = Vec::new();
    let mut delta: Vec<Vec<(L, usize)>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let closure = b.closure(order[i]);
        finals.push(closure.contains(&accept));
        let mut out = Vec::new();
        for p in closure {
            for &(l, q) in &b.edges[p] {
                if map[q] == usize::MAX {
                    map[q] = order.len();
                    order.push(q);
                }
                out.push((l, map[q]));
            }
        }
        delta.push(out);
        i += 1;
    }
    Ok((finals, delta))
}
