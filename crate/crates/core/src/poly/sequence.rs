use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PolyError;
use crate::combinatorics::is_rolle_word;

/// Order type of a strictly nice arrangement: the rows of the zeros read
/// left to right. Symbol `i` occurs `n - i` times and exactly one `i + 1`
/// sits between consecutive occurrences of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SymbolicSequence {
    // `n` first so ordering groups by degree, then lexicographic.
    n: usize,
    word: Vec<u8>,
}

impl SymbolicSequence {
    pub fn new(word: Vec<u8>, n: usize) -> Result<Self, PolyError> {
        if is_rolle_word(&word, n) {
            Ok(Self { n, word })
        } else {
            Err(PolyError::NotRolleWord {
                word: render(&word),
                n,
            })
        }
    }

    /// Skips validation; callers guarantee admissibility.
    pub(crate) fn new_unchecked(word: Vec<u8>, n: usize) -> Self {
        debug_assert!(is_rolle_word(&word, n));
        Self { n, word }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

pub(crate) fn render(word: &[u8]) -> String {
    word.iter()
        .map(|&s| char::from_digit(u32::from(s), 36).unwrap_or('?'))
        .collect()
}

pub(crate) fn parse_symbols(s: &str) -> Option<Vec<u8>> {
    s.chars()
        .map(|c| c.to_digit(36).and_then(|d| u8::try_from(d).ok()))
        .collect()
}

/// Degree whose triangular number is `len`.
pub(crate) fn degree_for_len(len: usize) -> Option<usize> {
    let mut n = 0;
    while n * (n + 1) / 2 < len {
        n += 1;
    }
    (n * (n + 1) / 2 == len).then_some(n)
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.word))
    }
}

impl FromStr for SymbolicSequence {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::NotRolleWord {
            word: s.to_string(),
            n: 0,
        };
        let word = parse_symbols(s).ok_or_else(bad)?;
        let n = degree_for_len(word.len())
            .filter(|&n| n > 0)
            .ok_or_else(bad)?;
        Self::new(word, n)
    }
}

impl From<SymbolicSequence> for String {
    fn from(s: SymbolicSequence) -> Self {
        s.to_string()
    }
}

impl TryFrom<String> for SymbolicSequence {
    type Error = PolyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
