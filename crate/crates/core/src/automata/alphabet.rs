use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered, non-empty set of symbol names.
///
/// Cloning is cheap; two alphabets compare equal when they list the same
/// names in the same order.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet {
            symbols: symbols.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    /// Checks that every symbol of `word` belongs to this alphabet.
    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.iter().find(|&&a| a >= self.len()) {
            Some(&a) => Err(Error::SymbolOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// Parses a word written as whitespace-separated symbols, or as a single
    /// run of symbols split by longest match (`TNT`). `eps`, `λ` and the
    /// empty string denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "eps" || text == "λ" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if let Some(i) = self.index_of(token) {
                out.push(i);
                continue;
            }
            let split = self
                .split_run(token)
                .ok_or_else(|| Error::UnknownSymbol(token.to_string()))?;
            out.extend(split);
        }
        Ok(Word::from(out))
    }

    /// Greedy longest-match split of a run of concatenated symbol names.
    pub(crate) fn split_run(&self, run: &str) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut rest = run;
        while !rest.is_empty() {
            let (index, len) = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .map(|(i, s)| (i, s.len()))
                .max_by_key(|&(_, len)| len)?;
            out.push(index);
            rest = &rest[len..];
        }
        Some(out)
    }

    /// Renders a word; symbols are juxtaposed when all names are one
    /// character long and space-separated otherwise. The empty word prints
    /// as `eps`.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "eps".to_string();
        }
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            " "
        };
        word.iter()
            .map(|&a| self.symbol(a))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.symbols, &other.symbols) || self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}

/// A finite sequence of symbol indices. The empty word is λ.
///
/// The derived `Ord` is plain lexicographic order; use
/// [`Word::shortlex_cmp`] for length-then-lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn push(&mut self, symbol: usize) {
        self.0.push(symbol);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn append(&self, symbol: usize) -> Word {
        let mut w = self.clone();
        w.push(symbol);
        w
    }

    pub fn prepend(&self, symbol: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(symbol);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// The first `len` symbols.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Everything from position `start` on.
    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// All words of length exactly `len` over `alphabet_size` symbols, in
    /// lexicographic order.
    pub fn all_of_length(alphabet_size: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = alphabet_size.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut n| {
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = n % alphabet_size;
                n /= alphabet_size;
            }
            Word(v)
        })
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn all_up_to(alphabet_size: usize, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| Word::all_of_length(alphabet_size, len))
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        write!(f, "{:?}", self.0)
    }
}
