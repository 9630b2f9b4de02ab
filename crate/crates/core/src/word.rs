//! Alphabets and the canonical run-length representation of finite words.
//!
//! A [`Word`] is stored as its list of maximal runs. Equality and hashing go
//! through the run list, which makes words usable as memoization keys, while
//! ordering is lexicographic on the letter sequence so reports come out in a
//! stable, human-readable order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A two-letter alphabet `{a, b}` of positive integers with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct Alphabet {
    a: u32,
    b: u32,
}

impl Alphabet {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::InvalidAlphabet { a, b });
        }
        Ok(Alphabet { a, b })
    }

    #[inline]
    pub fn a(&self) -> u32 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u32 {
        self.b
    }

    /// Both letters even.
    pub fn is_even(&self) -> bool {
        self.a.is_multiple_of(2) && self.b.is_multiple_of(2)
    }

    #[inline]
    pub fn contains(&self, letter: u32) -> bool {
        letter == self.a || letter == self.b
    }

    pub fn letters(&self) -> [u32; 2] {
        [self.a, self.b]
    }

    /// The other letter. Callers guarantee `letter` is in the alphabet.
    #[inline]
    pub fn other(&self, letter: u32) -> u32 {
        debug_assert!(self.contains(letter));
        if letter == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn check(&self, letter: u32) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(Error::LetterNotInAlphabet {
                letter,
                a: self.a,
                b: self.b,
            })
        }
    }

    /// Whether words over this alphabet can use the compact digit-string form.
    pub fn is_compact(&self) -> bool {
        self.b <= 9
    }
}

impl TryFrom<[u32; 2]> for Alphabet {
    type Error = Error;

    fn try_from(pair: [u32; 2]) -> Result<Self> {
        Alphabet::new(pair[0], pair[1])
    }
}

impl From<Alphabet> for [u32; 2] {
    fn from(alphabet: Alphabet) -> Self {
        [alphabet.a, alphabet.b]
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut parts = s.split(',').map(|p| p.trim().parse::<u32>());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Alphabet::new(a, b),
            _ => Err(Error::Parse(format!(
                "expected alphabet as `a,b`, got `{s}`"
            ))),
        }
    }
}

/// A maximal block `letter^len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub letter: u32,
    pub len: u32,
}

impl Run {
    pub fn new(letter: u32, len: u32) -> Self {
        Run { letter, len }
    }
}

/// A finite word over a two-letter alphabet, stored as maximal runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RleJson", into = "RleJson")]
pub struct Word {
    alphabet: Alphabet,
    runs: Vec<Run>,
    len: usize,
}

/// Statistics of the first and last runs of a nonempty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunProfile {
    /// Number of runs, `r(w)`.
    pub r: usize,
    pub fr_letter: u32,
    pub lr_letter: u32,
    /// Length of the first run.
    pub lfr: u32,
    /// Length of the last run.
    pub llr: u32,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            runs: Vec::new(),
            len: 0,
        }
    }

    /// Builds a word from its letter sequence.
    pub fn new(alphabet: Alphabet, letters: &[u32]) -> Result<Self> {
        let mut runs: Vec<Run> = Vec::new();
        for &letter in letters {
            alphabet.check(letter)?;
            match runs.last_mut() {
                Some(run) if run.letter == letter => run.len += 1,
                _ => runs.push(Run::new(letter, 1)),
            }
        }
        Ok(Word {
            alphabet,
            runs,
            len: letters.len(),
        })
    }

    /// Builds a word from runs, merging adjacent runs of the same letter.
    pub fn from_runs(alphabet: Alphabet, runs: impl IntoIterator<Item = Run>) -> Result<Self> {
        let mut merged: Vec<Run> = Vec::new();
        let mut len = 0usize;
        for run in runs {
            alphabet.check(run.letter)?;
            if run.len == 0 {
                continue;
            }
            len += run.len as usize;
            match merged.last_mut() {
                Some(last) if last.letter == run.letter => last.len += run.len,
                _ => merged.push(run),
            }
        }
        Ok(Word {
            alphabet,
            runs: merged,
            len,
        })
    }

    /// Run list already known to be canonical (nonzero lengths, alternating letters, letters in
    /// the alphabet).
    pub(crate) fn from_canonical_runs(alphabet: Alphabet, runs: Vec<Run>) -> Self {
        debug_assert!(runs
            .iter()
            .all(|r| r.len > 0 && alphabet.contains(r.letter)));
        debug_assert!(runs.windows(2).all(|w| w[0].letter != w[1].letter));
        let len = runs.iter().map(|r| r.len as usize).sum();
        Word {
            alphabet,
            runs,
            len,
        }
    }

    /// Builds a word whose letters are the given sequence of run lengths, as produced by the
    /// derivative. Values are checked against the alphabet.
    pub(crate) fn from_letter_iter(
        alphabet: Alphabet,
        letters: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        let mut runs: Vec<Run> = Vec::new();
        let mut len = 0;
        for letter in letters {
            alphabet.check(letter)?;
            len += 1;
            match runs.last_mut() {
                Some(run) if run.letter == letter => run.len += 1,
                _ => runs.push(Run::new(letter, 1)),
            }
        }
        Ok(Word {
            alphabet,
            runs,
            len,
        })
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of runs, `r(w)`.
    #[inline]
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn first_letter(&self) -> Option<u32> {
        self.runs.first().map(|r| r.letter)
    }

    pub fn last_letter(&self) -> Option<u32> {
        self.runs.last().map(|r| r.letter)
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = u32> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.letter, r.len as usize))
    }

    pub fn to_letters(&self) -> Vec<u32> {
        self.letters().collect()
    }

    pub fn profile(&self) -> Result<RunProfile> {
        let (first, last) = match (self.runs.first(), self.runs.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::EmptyWord),
        };
        Ok(RunProfile {
            r: self.runs.len(),
            fr_letter: first.letter,
            lr_letter: last.letter,
            lfr: first.len,
            llr: last.len,
        })
    }

    /// `|w|_letter`.
    pub fn count(&self, letter: u32) -> Result<usize> {
        self.alphabet.check(letter)?;
        Ok(self.count_unchecked(letter))
    }

    pub(crate) fn count_unchecked(&self, letter: u32) -> usize {
        self.runs
            .iter()
            .filter(|r| r.letter == letter)
            .map(|r| r.len as usize)
            .sum()
    }

    pub fn count_a(&self) -> usize {
        self.count_unchecked(self.alphabet.a)
    }

    pub fn count_b(&self) -> usize {
        self.count_unchecked(self.alphabet.b)
    }

    /// Letter-wise swap `a <-> b`.
    pub fn complement(&self) -> Word {
        let runs = self
            .runs
            .iter()
            .map(|r| Run::new(self.alphabet.other(r.letter), r.len))
            .collect();
        Word {
            alphabet: self.alphabet,
            runs,
            len: self.len,
        }
    }

    /// Mirror image.
    pub fn reversal(&self) -> Word {
        let runs = self.runs.iter().rev().copied().collect();
        Word {
            alphabet: self.alphabet,
            runs,
            len: self.len,
        }
    }

    /// `letter^count · self`.
    pub fn prepend(&self, letter: u32, count: u32) -> Result<Word> {
        self.alphabet.check(letter)?;
        let mut runs = Vec::with_capacity(self.runs.len() + 1);
        runs.push(Run::new(letter, count));
        runs.extend_from_slice(&self.runs);
        Word::from_runs(self.alphabet, runs)
    }

    /// `self · letter^count`.
    pub fn append(&self, letter: u32, count: u32) -> Result<Word> {
        self.alphabet.check(letter)?;
        let mut runs = self.runs.clone();
        runs.push(Run::new(letter, count));
        Word::from_runs(self.alphabet, runs)
    }

    /// The factor of length `len` starting at letter offset `start`.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        assert!(start + len <= self.len, "factor out of bounds");
        let mut runs = Vec::new();
        let end = start + len;
        let mut pos = 0usize;
        for run in &self.runs {
            let run_end = pos + run.len as usize;
            let lo = pos.max(start);
            let hi = run_end.min(end);
            if lo < hi {
                runs.push(Run::new(run.letter, (hi - lo) as u32));
            }
            if run_end >= end {
                break;
            }
            pos = run_end;
        }
        Word::from_canonical_runs(self.alphabet, runs)
    }

    /// All distinct factors of the given length, in order of first occurrence.
    pub fn factors_of_len(&self, len: usize) -> Vec<Word> {
        if len > self.len {
            return Vec::new();
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for start in 0..=self.len - len {
            let f = self.factor(start, len);
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
        out
    }

    /// Whether `other` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, other: &Word) -> bool {
        if other.is_empty() {
            return true;
        }
        if other.len > self.len {
            return false;
        }
        let hay = self.to_letters();
        let needle = other.to_letters();
        hay.windows(needle.len()).any(|w| w == needle.as_slice())
    }

    /// Compact digit string when every letter is a single digit, comma-separated otherwise.
    pub fn to_text(&self) -> String {
        if self.alphabet.is_compact() {
            self.letters()
                .map(|l| char::from_digit(l, 10).unwrap())
                .collect()
        } else {
            self.to_comma_text()
        }
    }

    pub fn to_comma_text(&self) -> String {
        self.letters()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses either the compact digit form (`"2211"`) or the comma form (`"2,2,1,1"`).
    /// The empty string and `ε` both denote the empty word.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty(alphabet));
        }
        let letters: Vec<u32> = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad letter `{t}`")))
                })
                .collect::<Result<_>>()?
        } else if alphabet.is_compact() {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit `{c}`")))
                })
                .collect::<Result<_>>()?
        } else if let Ok(single) = text.parse::<u32>() {
            vec![single]
        } else {
            return Err(Error::Parse(format!(
                "alphabet {alphabet} needs the comma-separated form, got `{text}`"
            )));
        };
        Word::new(alphabet, &letters)
    }
}

/// Every word of length `len` over `alphabet`, in lexicographic order. Exponential; meant for
/// brute-force checks at small lengths.
pub fn all_words(alphabet: Alphabet, len: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(1 << len.min(20));
    let mut letters = vec![alphabet.a(); len];
    loop {
        out.push(Word::new(alphabet, &letters).expect("letters drawn from the alphabet"));
        // odometer increment, last position fastest
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if letters[i] == alphabet.a() {
                letters[i] = alphabet.b();
                break;
            }
            letters[i] = alphabet.a();
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

/// `{"alphabet":[a,b],"runs":[[letter,len],...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RleJson {
    pub alphabet: [u32; 2],
    pub runs: Vec<[u32; 2]>,
}

impl From<Word> for RleJson {
    fn from(w: Word) -> Self {
        RleJson {
            alphabet: w.alphabet.into(),
            runs: w.runs.iter().map(|r| [r.letter, r.len]).collect(),
        }
    }
}

impl TryFrom<RleJson> for Word {
    type Error = Error;

    fn try_from(json: RleJson) -> Result<Self> {
        let alphabet = Alphabet::try_from(json.alphabet)?;
        let word = Word::from_runs(alphabet, json.runs.iter().map(|r| Run::new(r[0], r[1])))?;
        if word.runs.len() != json.runs.len() || json.runs.iter().any(|r| r[1] == 0) {
            return Err(Error::Parse("run list is not canonical".into()));
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(a: u32, b: u32) -> Alphabet {
        Alphabet::new(a, b).unwrap()
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(0, 2).is_err());
        assert!(Alphabet::new(2, 2).is_err());
        assert!(Alphabet::new(3, 2).is_err());
        assert!(ab(2, 4).is_even());
        assert!(!ab(1, 2).is_even());
        assert!(!ab(2, 5).is_even());
        assert_eq!("1,2".parse::<Alphabet>().unwrap(), ab(1, 2));
        assert_eq!("{2,4}".parse::<Alphabet>().unwrap(), ab(2, 4));
        assert!("1,2,3".parse::<Alphabet>().is_err());
    }

    #[test]
    fn make_word_examples() {
        let w = Word::parse(ab(1, 2), "2211").unwrap();
        assert_eq!(w.runs(), &[Run::new(2, 2), Run::new(1, 2)]);
        assert_eq!(w.to_letters(), vec![2, 2, 1, 1]);

        let w = Word::parse(ab(1, 3), "3311133313133311133").unwrap();
        assert_eq!(w.run_count(), 9);
        assert_eq!(w.len(), 19);

        let e = Word::new(ab(2, 4), &[]).unwrap();
        assert!(e.is_empty());
        assert!(e.runs().is_empty());
    }

    #[test]
    fn rejects_foreign_letters() {
        assert_eq!(
            Word::new(ab(1, 2), &[1, 3]),
            Err(Error::LetterNotInAlphabet {
                letter: 3,
                a: 1,
                b: 2
            })
        );
        assert!(Word::parse(ab(1, 2), "12x").is_err());
    }

    #[test]
    fn profile_examples() {
        // a^2 b^{2b} a^a b^3 at (a,b) = (2,4)
        let w = Word::from_runs(
            ab(2, 4),
            [
                Run::new(2, 2),
                Run::new(4, 8),
                Run::new(2, 2),
                Run::new(4, 3),
            ],
        )
        .unwrap();
        let p = w.profile().unwrap();
        assert_eq!(
            (p.r, p.lfr, p.llr, p.fr_letter, p.lr_letter),
            (4, 2, 3, 2, 4)
        );

        let single = Word::new(ab(2, 4), &[4, 4, 4, 4])
            .unwrap()
            .profile()
            .unwrap();
        assert_eq!((single.r, single.lfr, single.llr), (1, 4, 4));

        let p = Word::parse(ab(1, 2), "2211").unwrap().profile().unwrap();
        assert_eq!((p.r, p.lfr, p.llr), (2, 2, 2));

        assert_eq!(Word::empty(ab(1, 2)).profile(), Err(Error::EmptyWord));
    }

    #[test]
    fn complement_and_reversal() {
        let w = Word::parse(ab(1, 2), "2211").unwrap();
        assert_eq!(w.complement().to_text(), "1122");
        let u = Word::parse(ab(1, 3), "3313133311").unwrap();
        assert_eq!(u.reversal().to_text(), "1133313133");
        let e = Word::empty(ab(1, 2));
        assert_eq!(e.complement(), e);
        assert_eq!(e.reversal(), e);
    }

    #[test]
    fn count_examples() {
        let w = Word::parse(ab(1, 2), "2211").unwrap();
        assert_eq!(w.count(2).unwrap(), 2);
        let w = Word::parse(ab(1, 3), "3311133313133311133").unwrap();
        assert_eq!(w.count(3).unwrap(), 11);
        assert_eq!(w.count(1).unwrap() + w.count(3).unwrap(), w.len());
        assert_eq!(Word::empty(ab(1, 2)).count(1).unwrap(), 0);
        assert!(w.count(2).is_err());
    }

    #[test]
    fn text_forms() {
        let big = ab(10, 12);
        let w = Word::parse(big, "10,12,12").unwrap();
        assert_eq!(w.runs(), &[Run::new(10, 1), Run::new(12, 2)]);
        assert_eq!(w.to_text(), "10,12,12");
        assert_eq!(Word::parse(big, "12").unwrap().len(), 1);
        assert!(Word::parse(big, "1012").is_err());
        assert_eq!(Word::parse(ab(1, 2), "2,2,1,1").unwrap().to_text(), "2211");
        assert_eq!(Word::parse(ab(1, 2), "ε").unwrap(), Word::empty(ab(1, 2)));
    }

    #[test]
    fn rle_json_form() {
        let w = Word::parse(ab(1, 2), "2211").unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"alphabet":[1,2],"runs":[[2,2],[1,2]]}"#);
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        assert!(
            serde_json::from_str::<Word>(r#"{"alphabet":[1,2],"runs":[[2,1],[2,1]]}"#).is_err()
        );
        assert!(serde_json::from_str::<Word>(r#"{"alphabet":[2,1],"runs":[]}"#).is_err());
    }

    #[test]
    fn factors() {
        let w = Word::parse(ab(1, 2), "221121").unwrap();
        assert_eq!(w.factor(1, 3).to_text(), "211");
        assert_eq!(w.factor(0, 0), Word::empty(ab(1, 2)));
        assert_eq!(w.factors_of_len(2).len(), 4);
        assert!(w.contains_factor(&Word::parse(ab(1, 2), "112").unwrap()));
        assert!(!w.contains_factor(&Word::parse(ab(1, 2), "111").unwrap()));
    }

    #[test]
    fn ordering_is_lexicographic_on_letters() {
        let x = Word::parse(ab(1, 2), "12").unwrap();
        let y = Word::parse(ab(1, 2), "2").unwrap();
        let z = Word::parse(ab(1, 2), "121").unwrap();
        assert!(x < y);
        assert!(x < z);
        assert!(z < y);
    }
}
