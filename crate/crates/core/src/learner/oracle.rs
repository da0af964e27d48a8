use std::collections::HashMap;

use super::Teacher;
use crate::automata::Word;

/// Memoizing front for a teacher's membership queries.
///
/// Counts distinct words. Once the teacher signals a stop, further unknown
/// words are answered `false` without consulting it so that callers can
/// unwind at their next check.
pub struct MembershipOracle<'t, T: Teacher> {
    teacher: &'t mut T,
    memo: HashMap<Word, bool>,
    stop: Option<T::Stop>,
}

impl<'t, T: Teacher> MembershipOracle<'t, T> {
    pub fn new(teacher: &'t mut T) -> Self {
        MembershipOracle {
            teacher,
            memo: HashMap::new(),
            stop: None,
        }
    }

    pub fn query(&mut self, word: &Word) -> bool {
        if let Some(&b) = self.memo.get(word) {
            return b;
        }
        if self.stop.is_some() {
            return false;
        }
        let answer = self.teacher.membership(word);
        self.memo.insert(word.clone(), answer);
        self.stop = self.teacher.poll_stop();
        answer
    }

    pub fn cached(&self, word: &Word) -> Option<bool> {
        self.memo.get(word).copied()
    }

    pub fn queries(&self) -> usize {
        self.memo.len()
    }

    pub fn stopped(&self) -> bool {
        self.stop.is_some()
    }

    pub fn take_stop(&mut self) -> Option<T::Stop> {
        self.stop.take().or_else(|| self.teacher.poll_stop())
    }

    pub fn teacher(&mut self) -> &mut T {
        self.teacher
    }
}
