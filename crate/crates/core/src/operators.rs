//! Closure, derivative, `rho = D ∘ closure`, inverse derivative and primitives.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Run, Word};

/// Why a word has no derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NotDifferentiable {
    /// Some run is longer than `b`.
    RunTooLong,
    /// An interior run has a length other than `a` or `b`.
    InteriorRunNotInAlphabet,
}

impl fmt::Display for NotDifferentiable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotDifferentiable::RunTooLong => f.write_str("a run is longer than b"),
            NotDifferentiable::InteriorRunNotInAlphabet => {
                f.write_str("an interior run length is neither a nor b")
            }
        }
    }
}

/// Result of applying `D`: a word, or the reason it does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DerivativeOutcome {
    Ok(Word),
    NotDifferentiable(NotDifferentiable),
}

impl DerivativeOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, DerivativeOutcome::Ok(_))
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            DerivativeOutcome::Ok(w) => Some(w),
            DerivativeOutcome::NotDifferentiable(_) => None,
        }
    }

    pub fn into_word(self) -> Option<Word> {
        match self {
            DerivativeOutcome::Ok(w) => Some(w),
            DerivativeOutcome::NotDifferentiable(_) => None,
        }
    }

    pub fn into_result(self) -> Result<Word> {
        match self {
            DerivativeOutcome::Ok(w) => Ok(w),
            DerivativeOutcome::NotDifferentiable(r) => Err(Error::NotDifferentiable(r)),
        }
    }
}

/// Pads a boundary run to length `b` when it is longer than `a`.
///
/// A single-run word is padded once, to a run of exactly `b`.
pub fn closure(w: &Word) -> Result<Word> {
    let alphabet = w.alphabet();
    let (a, b) = (alphabet.a(), alphabet.b());
    if let Some(run) = w.runs().iter().find(|r| r.len > b) {
        return Err(Error::RunTooLong {
            length: run.len,
            max: b,
        });
    }
    let mut runs = w.runs().to_vec();
    let n = runs.len();
    if n == 0 {
        return Ok(w.clone());
    }
    if runs[0].len > a {
        runs[0].len = b;
    }
    if runs[n - 1].len > a {
        runs[n - 1].len = b;
    }
    Ok(Word::from_canonical_runs(alphabet, runs))
}

/// Checks the differentiability conditions without building the derivative.
pub fn differentiability(w: &Word) -> std::result::Result<(), NotDifferentiable> {
    let alphabet = w.alphabet();
    let runs = w.runs();
    if runs.iter().any(|r| r.len > alphabet.b()) {
        return Err(NotDifferentiable::RunTooLong);
    }
    if runs.len() > 2
        && runs[1..runs.len() - 1]
            .iter()
            .any(|r| !alphabet.contains(r.len))
    {
        return Err(NotDifferentiable::InteriorRunNotInAlphabet);
    }
    Ok(())
}

/// The derivative `D(w)`: the word of run lengths, with a boundary run dropped when it is
/// shorter than `b`. A single run is dropped at most once.
pub fn derivative(w: &Word) -> DerivativeOutcome {
    if let Err(reason) = differentiability(w) {
        return DerivativeOutcome::NotDifferentiable(reason);
    }
    let alphabet = w.alphabet();
    let b = alphabet.b();
    let runs = w.runs();
    let kept: &[Run] = match runs.len() {
        0 => &[],
        1 => {
            if runs[0].len == b {
                runs
            } else {
                &[]
            }
        }
        n => {
            let lo = usize::from(runs[0].len < b);
            let hi = if runs[n - 1].len < b { n - 1 } else { n };
            &runs[lo..hi]
        }
    };
    let word = Word::from_letter_iter(alphabet, kept.iter().map(|r| r.len))
        .expect("kept run lengths lie in the alphabet");
    DerivativeOutcome::Ok(word)
}

/// `rho(w) = D(closure(w))`.
pub fn rho(w: &Word) -> DerivativeOutcome {
    match closure(w) {
        Ok(c) => derivative(&c),
        Err(_) => DerivativeOutcome::NotDifferentiable(NotDifferentiable::RunTooLong),
    }
}

/// `Δ_start^{-1}(u)`: alternating runs beginning with `start`, run lengths read from `u`.
pub fn inverse_derivative(u: &Word, start: u32) -> Result<Word> {
    let alphabet = u.alphabet();
    alphabet.check(start)?;
    let mut letter = start;
    let runs = u
        .letters()
        .map(|len| {
            let run = Run::new(letter, len);
            letter = alphabet.other(letter);
            run
        })
        .collect();
    Ok(Word::from_canonical_runs(alphabet, runs))
}

/// Letter that follows the last run of `Δ_start^{-1}(u)`; for `u = ε` this is `start` itself.
fn closing_letter(alphabet: Alphabet, u: &Word, start: u32) -> u32 {
    if u.len() % 2 == 1 {
        alphabet.other(start)
    } else {
        start
    }
}

/// All `v` with `D(v) = w`.
///
/// Candidates are `ᾱ^i · Δ_α^{-1}(w) · γ^j` for `α ∈ {a,b}` and `0 <= i,j < b`, kept when they
/// derive back to `w`. The empty word is excluded from the primitives of `ε`.
pub fn primitives(w: &Word) -> BTreeSet<Word> {
    let alphabet = w.alphabet();
    let b = alphabet.b();
    let mut out = BTreeSet::new();
    for alpha in alphabet.letters() {
        let core = inverse_derivative(w, alpha).expect("alpha is in the alphabet");
        let gamma = closing_letter(alphabet, w, alpha);
        let lead = alphabet.other(alpha);
        for i in 0..b {
            for j in 0..b {
                let mut runs = Vec::with_capacity(core.run_count() + 2);
                runs.push(Run::new(lead, i));
                runs.extend_from_slice(core.runs());
                runs.push(Run::new(gamma, j));
                let v = Word::from_runs(alphabet, runs).expect("letters are in the alphabet");
                if v.is_empty() {
                    continue;
                }
                if derivative(&v).word() == Some(w) {
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Run-length derivative for words over any alphabet of positive integers.
///
/// A boundary run shorter than `max_letter` is dropped; a single run is dropped once.
pub fn generic_run_length_derivative(letters: &[u32], max_letter: u32) -> Result<Vec<u32>> {
    if let Some(&bad) = letters.iter().find(|&&l| l == 0) {
        return Err(Error::InvalidArgument(format!(
            "letter {bad} is not positive"
        )));
    }
    let mut runs: Vec<u32> = Vec::new();
    let mut prev = None;
    for &l in letters {
        if prev == Some(l) {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
            prev = Some(l);
        }
    }
    if let Some(&len) = runs.iter().find(|&&len| len > max_letter) {
        return Err(Error::RunTooLong {
            length: len,
            max: max_letter,
        });
    }
    let n = runs.len();
    let kept = match n {
        0 => &runs[..],
        1 => {
            if runs[0] == max_letter {
                &runs[..]
            } else {
                &runs[..0]
            }
        }
        _ => {
            let lo = usize::from(runs[0] < max_letter);
            let hi = if runs[n - 1] < max_letter { n - 1 } else { n };
            &runs[lo..hi]
        }
    };
    Ok(kept.to_vec())
}
