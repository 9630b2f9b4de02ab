//! The Kolakoski sequence and its generalisation to `{a, b}`.
//!
//! `K = 2211212212211211…` over `{1,2}` is the sequence equal to its own run-length sequence. Over a
//! general alphabet the stream alternates letters from a chosen first letter and takes its `k`-th
//! run length from its own `k`-th letter. For alphabets other than `{1,2}` this is an extension;
//! only the self-encoding property is checked.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::smooth::{is_smooth, SmoothCache};
use crate::word::{Alphabet, Word};

/// Self-run-length-encoding stream, generated with a write cursor and a read cursor into its own
/// prefix.
#[derive(Debug, Clone)]
pub struct KolakoskiStream {
    alphabet: Alphabet,
    first_letter: u32,
    letters: Vec<u32>,
    /// Index of the letter giving the next run length.
    read: usize,
    next_letter: u32,
}

impl KolakoskiStream {
    pub fn new(alphabet: Alphabet, first_letter: u32) -> Result<Self> {
        alphabet.check(first_letter)?;
        Ok(KolakoskiStream {
            alphabet,
            first_letter,
            letters: Vec::new(),
            read: 0,
            next_letter: first_letter,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn first_letter(&self) -> u32 {
        self.first_letter
    }

    /// Extends the stream until at least `n` letters exist.
    pub fn extend_to(&mut self, n: usize) {
        while self.letters.len() < n {
            let letter = self.next_letter;
            // the run being written may be the one that defines its own length
            let len = self.letters.get(self.read).copied().unwrap_or(letter);
            self.letters
                .extend(std::iter::repeat_n(letter, len as usize));
            self.read += 1;
            self.next_letter = self.alphabet.other(letter);
        }
    }

    pub fn prefix(&mut self, n: usize) -> &[u32] {
        self.extend_to(n);
        &self.letters[..n]
    }
}

/// First `n` letters of the stream.
pub fn generate(alphabet: Alphabet, first_letter: u32, n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "prefix length must be at least 1".into(),
        ));
    }
    let mut s = KolakoskiStream::new(alphabet, first_letter)?;
    Word::new(alphabet, s.prefix(n))
}

/// The classical sequence over `{1,2}`, starting with 2.
pub fn kolakoski(n: usize) -> Word {
    generate(Alphabet::new(1, 2).expect("valid alphabet"), 2, n).expect("n >= 1")
}

/// `|prefix|_letter / |prefix|`
pub fn density(prefix: &Word, letter: u32) -> Result<Ratio<u64>> {
    if prefix.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(Ratio::new(
        prefix.count(letter)? as u64,
        prefix.len() as u64,
    ))
}

/// Whether the run lengths of `prefix`, without its final run, are a prefix of `prefix`.
pub fn is_self_encoding(prefix: &Word) -> bool {
    let runs = prefix.runs();
    let complete = runs.len().saturating_sub(1);
    runs[..complete]
        .iter()
        .zip(prefix.letters())
        .all(|(r, l)| r.len == l)
}

/// Whether every factor of length `window` is smooth.
pub fn factor_smoothness_check(prefix: &Word, window: usize) -> Result<bool> {
    if window == 0 || window > prefix.len() {
        return Err(Error::InvalidArgument(format!(
            "window {window} must lie in 1..={}",
            prefix.len()
        )));
    }
    let letters = prefix.to_letters();
    let distinct: HashSet<&[u32]> = letters.windows(window).collect();
    let cache = SmoothCache::new();
    for f in distinct {
        if !is_smooth(&Word::new(prefix.alphabet(), f)?, Some(&cache)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Burn-in and stride of the prefix-density checkpoints.
pub const DENSITY_BURN_IN: usize = 10_000;
pub const DENSITY_STEP: usize = 1_000;

/// Largest density of `letter` over the prefixes of length `burn_in, burn_in + step, …, |prefix|`.
/// A finite-prefix statistic only; it says nothing definite about upper densities.
pub fn max_prefix_density(prefix: &Word, letter: u32, burn_in: usize, step: usize) -> Result<f64> {
    prefix.alphabet().check(letter)?;
    if step == 0 || burn_in == 0 || burn_in > prefix.len() {
        return Err(Error::InvalidArgument(format!(
            "checkpoints from {burn_in} by {step} do not fit a prefix of length {}",
            prefix.len()
        )));
    }
    let mut count = 0usize;
    let mut best = 0f64;
    for (i, l) in prefix.letters().enumerate() {
        if l == letter {
            count += 1;
        }
        let n = i + 1;
        if n >= burn_in && (n - burn_in).is_multiple_of(step) {
            best = best.max(count as f64 / n as f64);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KolakoskiStats {
    pub n: usize,
    pub density_a: f64,
    pub density_b: f64,
    /// Largest density of `a` over the checkpoint prefixes; `None` when `n` is below the burn-in.
    pub max_window_density: Option<f64>,
}

pub fn stats(prefix: &Word) -> Result<KolakoskiStats> {
    let s = prefix.alphabet();
    let to_f = |r: Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
    Ok(KolakoskiStats {
        n: prefix.len(),
        density_a: to_f(density(prefix, s.a())?),
        density_b: to_f(density(prefix, s.b())?),
        max_window_density: max_prefix_density(prefix, s.a(), DENSITY_BURN_IN, DENSITY_STEP).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_prefix() {
        assert_eq!(kolakoski(18).to_text(), "221121221221121122");
        assert_eq!(kolakoski(1).to_text(), "2");
        let s = Alphabet::new(1, 2).unwrap();
        assert_eq!(generate(s, 1, 10).unwrap().to_text(), "1221121221");
        assert!(generate(s, 3, 10).is_err());
        assert!(generate(s, 2, 0).is_err());
    }

    #[test]
    fn self_encoding() {
        for (a, b, first) in [
            (1, 2, 2),
            (1, 2, 1),
            (2, 4, 4),
            (2, 4, 2),
            (1, 3, 3),
            (3, 5, 3),
        ] {
            let s = Alphabet::new(a, b).unwrap();
            for n in [1, 2, 5, 20, 137, 2000] {
                let w = generate(s, first, n).unwrap();
                assert_eq!(w.len(), n);
                assert!(is_self_encoding(&w), "{s} {first} {n}");
            }
        }
    }

    #[test]
    fn prefixes_are_consistent() {
        let long = kolakoski(5000).to_letters();
        for n in [1, 7, 100, 4999] {
            assert_eq!(kolakoski(n).to_letters(), long[..n]);
        }
    }

    #[test]
    fn densities() {
        let w = kolakoski(10_000);
        let d1 = density(&w, 1).unwrap();
        let d2 = density(&w, 2).unwrap();
        assert_eq!(d1 + d2, Ratio::from_integer(1));
        assert!(density(&Word::empty(w.alphabet()), 1).is_err());
        assert!(density(&w, 3).is_err());
    }

    #[test]
    fn factors_smooth() {
        let w = kolakoski(3000);
        assert!(factor_smoothness_check(&w, 1).unwrap());
        assert!(factor_smoothness_check(&w, 12).unwrap());
        assert!(factor_smoothness_check(&w, 3001).is_err());
    }

    #[test]
    fn corrupted_prefix_fails() {
        let mut letters = kolakoski(200).to_letters();
        // 2211 2 1 22 ... → turn the lone 2 at index 4 into 1, producing 111
        letters[4] = 1;
        let bad = Word::new(Alphabet::new(1, 2).unwrap(), &letters).unwrap();
        assert!((1..=12).any(|k| !factor_smoothness_check(&bad, k).unwrap()));
    }
}
