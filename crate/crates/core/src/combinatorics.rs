//! Admissible symbolic sequences (Rolle words), their closed-form count, and
//! the circular "possible periodic" analog.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::SymbolicSequence;

/// Largest degree `enumerate_rolle_words` accepts.
pub const MAX_ENUM_DEGREE: usize = 7;
/// Largest circular word length `enumerate_periodic` accepts.
pub const MAX_PERIODIC_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("degree {n} outside enumeration range 1..={MAX_ENUM_DEGREE}")]
    DegreeOutOfRange { n: usize },
    #[error(
        "circular word length {len} (copies {copies} x depth {k}) outside 1..={MAX_PERIODIC_LEN}"
    )]
    PeriodicTooLarge { copies: usize, k: usize, len: usize },
    #[error("word is not a possible periodic sequence")]
    NotPeriodic,
}

/// Symbol `i` occurs `n - i` times, and between any two consecutive
/// occurrences of `i` there is exactly one `i + 1`.
pub fn is_rolle_word(word: &[u8], n: usize) -> bool {
    if n == 0 || word.len() != n * (n + 1) / 2 {
        return false;
    }
    let mut counts = vec![0usize; n];
    for &s in word {
        match counts.get_mut(usize::from(s)) {
            Some(c) => *c += 1,
            None => return false,
        }
    }
    if counts.iter().enumerate().any(|(i, &c)| c != n - i) {
        return false;
    }
    (0..n.saturating_sub(1)).all(|i| one_between_linear(word, i as u8))
}

fn one_between_linear(word: &[u8], i: u8) -> bool {
    let mut seen = false;
    let mut between = 0;
    for &s in word {
        if s == i {
            if seen && between != 1 {
                return false;
            }
            seen = true;
            between = 0;
        } else if s == i + 1 && seen {
            between += 1;
        }
    }
    true
}

/// Sorted, duplicate-free set of all admissible words of one degree. Words
/// are packed four bits per symbol, most significant first, so integer order
/// is lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RolleWordSet {
    n: usize,
    packed: Vec<u128>,
}

impl RolleWordSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.packed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packed.is_empty()
    }

    pub fn contains(&self, s: &SymbolicSequence) -> bool {
        s.n() == self.n && self.packed.binary_search(&pack(s.word())).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = SymbolicSequence> + '_ {
        let len = self.n * (self.n + 1) / 2;
        self.packed
            .iter()
            .map(move |&p| SymbolicSequence::new_unchecked(unpack(p, len), self.n))
    }
}

fn pack(word: &[u8]) -> u128 {
    word.iter()
        .fold(0u128, |acc, &s| (acc << 4) | u128::from(s))
}

fn unpack(mut p: u128, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (p & 0xf) as u8;
        p >>= 4;
    }
    out
}

/// Calls `visit` on every admissible word of degree `n`, in lexicographic
/// order, without materializing the set.
pub fn for_each_rolle_word(
    n: usize,
    mut visit: impl FnMut(&[u8]),
) -> Result<(), CombinatoricsError> {
    if !(1..=MAX_ENUM_DEGREE).contains(&n) {
        return Err(CombinatoricsError::DegreeOutOfRange { n });
    }
    let mut state = LinearState {
        n,
        remaining: (0..n).map(|i| n - i).collect(),
        seen: vec![false; n],
        between: vec![0; n],
        word: Vec::with_capacity(n * (n + 1) / 2),
    };
    state.extend(&mut visit);
    Ok(())
}

struct LinearState {
    n: usize,
    remaining: Vec<usize>,
    seen: Vec<bool>,
    // between[i]: copies of i + 1 placed since the last i
    between: Vec<u8>,
    word: Vec<u8>,
}

impl LinearState {
    fn extend(&mut self, visit: &mut impl FnMut(&[u8])) {
        if self.word.len() == self.n * (self.n + 1) / 2 {
            visit(&self.word);
            return;
        }
        for s in 0..self.n {
            if self.remaining[s] == 0 {
                continue;
            }
            // s must fall strictly inside a gap of s - 1 that has no s yet
            if s > 0 && !(self.seen[s - 1] && self.remaining[s - 1] > 0 && self.between[s - 1] == 0)
            {
                continue;
            }
            // closing a gap of s requires exactly one s + 1 inside it
            if s + 1 < self.n && self.seen[s] && self.between[s] != 1 {
                continue;
            }

            let saved = (self.seen[s], self.between[s]);
            self.remaining[s] -= 1;
            self.seen[s] = true;
            self.between[s] = 0;
            if s > 0 {
                self.between[s - 1] = 1;
            }
            self.word.push(s as u8);

            self.extend(visit);

            self.word.pop();
            if s > 0 {
                self.between[s - 1] = 0;
            }
            (self.seen[s], self.between[s]) = saved;
            self.remaining[s] += 1;
        }
    }
}

/// All admissible words of degree `n`, sorted lexicographically.
pub fn enumerate_rolle_words(n: usize) -> Result<RolleWordSet, CombinatoricsError> {
    let mut packed = Vec::new();
    for_each_rolle_word(n, |w| packed.push(pack(w)))?;
    debug_assert!(packed.windows(2).all(|w| w[0] < w[1]));
    Ok(RolleWordSet { n, packed })
}

fn factorial(m: usize) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of admissible words of degree `n`:
/// `binom(n+1, 2)! * (1! 2! ... (n-1)!) / (1! 3! ... (2n-1)!)`, exactly.
pub fn flat_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut num = factorial(n * (n + 1) / 2);
    for k in 1..n {
        num *= factorial(k);
    }
    let den = (1..=n).fold(BigUint::one(), |acc, k| acc * factorial(2 * k - 1));
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Serde adapter storing a `BigUint` as a decimal string.
pub mod biguint_decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Circular word with `copies` occurrences of each of `k` symbols, stored in
/// its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircularSequence {
    copies: usize,
    k: usize,
    word: Vec<u8>,
}

impl CircularSequence {
    /// Canonicalizes the rotation and checks the cyclic one-between rule.
    pub fn new(word: Vec<u8>, copies: usize, k: usize) -> Result<Self, CombinatoricsError> {
        if !is_possible_periodic(&word, copies, k) {
            return Err(CombinatoricsError::NotPeriodic);
        }
        Ok(Self {
            copies,
            k,
            word: canonical_rotation(&word),
        })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }
}

impl fmt::Display for CircularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::poly::render_word(&self.word))
    }
}

/// Lexicographically least rotation.
pub fn canonical_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            let ra = word[a..].iter().chain(&word[..a]);
            let rb = word[b..].iter().chain(&word[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0);
    word[best..].iter().chain(&word[..best]).copied().collect()
}

/// Each of the `k` symbols occurs `copies` times and, read cyclically,
/// exactly one `i + 1` lies between consecutive copies of `i`.
pub fn is_possible_periodic(word: &[u8], copies: usize, k: usize) -> bool {
    if copies == 0 || k == 0 || word.len() != copies * k {
        return false;
    }
    let mut counts = vec![0usize; k];
    for &s in word {
        match counts.get_mut(usize::from(s)) {
            Some(c) => *c += 1,
            None => return false,
        }
    }
    if counts.iter().any(|&c| c != copies) {
        return false;
    }
    (0..k - 1).all(|i| {
        let i = i as u8;
        let start = word.iter().position(|&s| s == i).expect("counted above");
        // Walk once around the circle starting at a copy of i.
        let mut between = 0;
        for step in 1..=word.len() {
            let s = word[(start + step) % word.len()];
            if s == i {
                if between != 1 {
                    return false;
                }
                between = 0;
            } else if s == i + 1 {
                between += 1;
            }
        }
        true
    })
}

/// All possible periodic words with `copies` copies of each of `k` symbols,
/// one per rotation class, sorted.
pub fn enumerate_periodic(
    copies: usize,
    k: usize,
) -> Result<Vec<CircularSequence>, CombinatoricsError> {
    let len = copies * k;
    if copies == 0 || k == 0 || len > MAX_PERIODIC_LEN {
        return Err(CombinatoricsError::PeriodicTooLarge { copies, k, len });
    }
    let mut state = CircularState {
        len,
        k,
        remaining: vec![copies; k],
        seen: vec![false; k],
        before_first: vec![0; k],
        since_last: vec![0; k],
        word: Vec::with_capacity(len),
        out: Vec::new(),
    };
    // The least rotation always starts with 0.
    state.place(0);
    state.extend();
    let mut out = state.out;
    out.sort();
    Ok(out)
}

struct CircularState {
    len: usize,
    k: usize,
    remaining: Vec<usize>,
    seen: Vec<bool>,
    // copies of i + 1 before the first i, and since the latest i
    before_first: Vec<u8>,
    since_last: Vec<u8>,
    word: Vec<u8>,
    out: Vec<CircularSequence>,
}

type Saved = (bool, u8, u8, u8, u8);

impl CircularState {
    fn allowed(&self, s: usize) -> bool {
        if self.remaining[s] == 0 {
            return false;
        }
        if s > 0 {
            let i = s - 1;
            if self.seen[i] {
                let wrap_gap = self.remaining[i] == 0;
                let used = self.since_last[i] + if wrap_gap { self.before_first[i] } else { 0 };
                if used != 0 {
                    return false;
                }
            } else if self.before_first[i] != 0 {
                return false;
            }
        }
        if s + 1 < self.k && self.seen[s] && self.since_last[s] != 1 {
            return false;
        }
        true
    }

    fn place(&mut self, s: usize) -> Saved {
        let prev = s.checked_sub(1);
        let saved = (
            self.seen[s],
            self.since_last[s],
            prev.map_or(0, |i| self.since_last[i]),
            prev.map_or(0, |i| self.before_first[i]),
            0,
        );
        if let Some(i) = prev {
            if self.seen[i] {
                self.since_last[i] += 1;
            } else {
                self.before_first[i] += 1;
            }
        }
        self.remaining[s] -= 1;
        self.seen[s] = true;
        self.since_last[s] = 0;
        self.word.push(s as u8);
        saved
    }

    fn unplace(&mut self, s: usize, saved: Saved) {
        self.word.pop();
        self.remaining[s] += 1;
        self.seen[s] = saved.0;
        self.since_last[s] = saved.1;
        if let Some(i) = s.checked_sub(1) {
            self.since_last[i] = saved.2;
            self.before_first[i] = saved.3;
        }
    }

    fn extend(&mut self) {
        if self.word.len() == self.len {
            let closed = (0..self.k - 1).all(|i| self.before_first[i] + self.since_last[i] == 1);
            if closed && canonical_rotation(&self.word) == self.word {
                self.out.push(CircularSequence {
                    copies: self.len / self.k,
                    k: self.k,
                    word: self.word.clone(),
                });
            }
            return;
        }
        for s in 0..self.k {
            if self.allowed(s) {
                let saved = self.place(s);
                self.extend();
                self.unplace(s, saved);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn strings(set: &RolleWordSet) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rolle_word_membership() {
        assert!(is_rolle_word(&w("010210"), 3));
        assert!(is_rolle_word(&w("012010"), 3));
        assert!(!is_rolle_word(&w("001210"), 3));
        assert!(is_rolle_word(&w("0102310210"), 4));
        assert!(!is_rolle_word(&w("010"), 3));
        assert!(!is_rolle_word(&w("0103"), 2));
        assert!(!is_rolle_word(&[], 0));
        // right multiplicities, but a 1 outside the span of the 0s
        assert!(!is_rolle_word(&w("100"), 2));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(strings(&enumerate_rolle_words(1).unwrap()), vec!["0"]);
        assert_eq!(strings(&enumerate_rolle_words(2).unwrap()), vec!["010"]);
        assert_eq!(
            strings(&enumerate_rolle_words(3).unwrap()),
            vec!["010210", "012010"]
        );
    }

    #[test]
    fn degree_four_contains_both_named_words() {
        let set = enumerate_rolle_words(4).unwrap();
        assert_eq!(set.len(), 12);
        for s in ["0120103210", "0102310210", "0120132010"] {
            assert!(set.contains(&s.parse().unwrap()), "{s}");
        }
        assert!(!set.contains(&"010210".parse().unwrap()));
    }

    #[test]
    fn guard_rejects_out_of_range() {
        assert_eq!(
            enumerate_rolle_words(0),
            Err(CombinatoricsError::DegreeOutOfRange { n: 0 })
        );
        assert!(enumerate_rolle_words(8).is_err());
    }

    #[test]
    fn flat_count_values() {
        let expect: [u64; 6] = [1, 1, 2, 12, 286, 33592];
        for (n, &e) in (1..=6).zip(expect.iter()) {
            assert_eq!(flat_count(n), BigUint::from(e), "n = {n}");
        }
        assert_eq!(flat_count(0), BigUint::zero());
    }

    #[test]
    fn pack_round_trip() {
        let word = w("0120103210");
        assert_eq!(unpack(pack(&word), word.len()), word);
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(canonical_rotation(&w("1010")), w("0101"));
        assert_eq!(canonical_rotation(&w("21021010")), w("01021021"));
        assert_eq!(canonical_rotation(&[]), Vec::<u8>::new());
    }

    #[test]
    fn periodic_small_cases() {
        let one = enumerate_periodic(1, 2).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].word(), &w("01"));
        let two = enumerate_periodic(2, 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].to_string(), "0101");
        assert!(enumerate_periodic(5, 5).is_err());
        assert!(enumerate_periodic(0, 2).is_err());
    }

    #[test]
    fn periodic_checker() {
        assert!(is_possible_periodic(&w("0101"), 2, 2));
        assert!(is_possible_periodic(&w("1010"), 2, 2));
        assert!(!is_possible_periodic(&w("0011"), 2, 2));
        assert!(is_possible_periodic(&w("012"), 1, 3));
        assert!(!is_possible_periodic(&w("0102"), 2, 2));
        let c = CircularSequence::new(w("1010"), 2, 2).unwrap();
        assert_eq!(c.word(), &w("0101"));
        assert_eq!(
            CircularSequence::new(w("0011"), 2, 2),
            Err(CombinatoricsError::NotPeriodic)
        );
    }
}
