//! Enumeration of left fully extendable (LFE) words.
//!
//! Two views of the same set: by height level (`P^j(ε)`, grown by constructive
//! expansion from the empty word) and by length (`LF_k`, filtered from the
//! frontier of smooth words). Independent filter-based routes are provided to
//! cross-check the constructive one.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{derivative, inverse_derivative, primitives};
use crate::smooth::{is_lfe, is_smooth, SmoothCache};
use crate::word::{Alphabet, RleJson, Run, Word};

/// Default cap on the number of words held in one level or length class.
pub const DEFAULT_MAX_STATES: u64 = 2_000_000;

/// `P^j(ε)`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfeLevel {
    pub alphabet: Alphabet,
    pub j: u32,
    pub words: Vec<Word>,
}

/// `LF_k`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfeLengthClass {
    pub alphabet: Alphabet,
    pub k: usize,
    pub words: Vec<Word>,
}

/// Closed form `4(b-1)(2b-1)^{j-1}`.
pub fn level_size_formula(alphabet: Alphabet, j: u32) -> u64 {
    assert!(j >= 1);
    let b = alphabet.b() as u64;
    4 * (b - 1) * (2 * b - 1).pow(j - 1)
}

fn lfe_primitives_of_empty(alphabet: Alphabet) -> Vec<Word> {
    let (a, b) = (alphabet.a(), alphabet.b());
    let mut out = Vec::with_capacity(4 * (b as usize - 1));
    for alpha in alphabet.letters() {
        let other = alphabet.other(alpha);
        for j in 1..b {
            out.push(Word::from_canonical_runs(
                alphabet,
                vec![Run::new(alpha, a), Run::new(other, j)],
            ));
        }
        for i in 1..b {
            out.push(Word::from_canonical_runs(
                alphabet,
                vec![Run::new(alpha, i)],
            ));
        }
    }
    out
}

/// Candidate LFE primitives of `w` in their explicit form: `β̄^a · Δ_β^{-1}(w) · γ^j` for both
/// choices of `β`, with `j` in `0..b` when `w` ends in `b` and in `1..b` when it ends in `a`.
/// For `ε` the candidates are `α^a ᾱ^j` and `α^i` with `1 <= i,j < b`.
///
/// When `b = a + 1` every candidate of an LFE word is LFE. For wider alphabets, a candidate whose
/// final run has length strictly between `a` and `b` is padded by closure and may fail.
pub fn lfe_candidates(w: &Word) -> Vec<Word> {
    let alphabet = w.alphabet();
    if w.is_empty() {
        return lfe_primitives_of_empty(alphabet);
    }
    let (a, b) = (alphabet.a(), alphabet.b());
    let first_j = if w.last_letter() == Some(b) { 0 } else { 1 };
    let mut out = Vec::with_capacity(2 * b as usize);
    for beta in alphabet.letters() {
        let core = inverse_derivative(w, beta).expect("beta is in the alphabet");
        let gamma = if w.len().is_multiple_of(2) {
            beta
        } else {
            alphabet.other(beta)
        };
        for j in first_j..b {
            let mut runs = Vec::with_capacity(core.run_count() + 2);
            runs.push(Run::new(alphabet.other(beta), a));
            runs.extend_from_slice(core.runs());
            if j > 0 {
                runs.push(Run::new(gamma, j));
            }
            out.push(Word::from_canonical_runs(alphabet, runs));
        }
    }
    out
}

/// The LFE primitives of an LFE word: the candidates of [`lfe_candidates`] that pass
/// [`is_lfe`]. Every LFE primitive has the candidate shape, so the result is complete.
pub fn lfe_expand(w: &Word, cache: Option<&SmoothCache>) -> Result<BTreeSet<Word>> {
    if !is_lfe(w, cache) {
        return Err(Error::NotLfe);
    }
    let mut out = BTreeSet::new();
    for v in lfe_candidates(w) {
        if derivative(&v).word() != Some(w) {
            return Err(Error::Internal(format!(
                "constructed primitive {v} does not derive to {w}"
            )));
        }
        if is_lfe(&v, cache) {
            out.insert(v);
        }
    }
    Ok(out)
}

fn guard(what: &'static str, size: u64, cap: u64) -> Result<()> {
    if size > cap {
        Err(Error::ResourceLimit { what, size, cap })
    } else {
        Ok(())
    }
}

/// `P^j(ε)` by repeated constructive expansion.
pub fn p_level(alphabet: Alphabet, j: u32, max_states: u64) -> Result<LfeLevel> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "level index j must be at least 1".into(),
        ));
    }
    let mut words = vec![Word::empty(alphabet)];
    for _ in 1..=j {
        let expanded: Vec<BTreeSet<Word>> = words
            .par_iter()
            .map(|w| lfe_expand(w, None))
            .collect::<Result<_>>()?;
        let mut next: Vec<Word> = expanded.into_iter().flatten().collect();
        next.par_sort_unstable();
        next.dedup();
        guard("LFE level", next.len() as u64, max_states)?;
        words = next;
    }
    Ok(LfeLevel { alphabet, j, words })
}

fn longest_primitive(w: &Word) -> usize {
    let b = w.alphabet().b() as usize;
    w.letters().map(|l| l as usize).sum::<usize>() + 2 * (b - 1)
}

/// `{u LFE : |u| > 0, D(u) ∈ P^{j-1}(ε)}` computed by filtering: every preimage of each word in
/// the previous level (all `v` with `D(v) = w`, at most `2b²` of them) is tested with
/// [`is_lfe`]. Levels are built from `{ε}` by this filter alone.
pub fn p_level_oracle(
    alphabet: Alphabet,
    j: u32,
    max_len: usize,
    max_states: u64,
) -> Result<LfeLevel> {
    if j == 0 {
        return Err(Error::InvalidArgument(
            "level index j must be at least 1".into(),
        ));
    }
    let mut words = vec![Word::empty(alphabet)];
    for level in 1..=j {
        if let Some(needed) = words.iter().map(longest_primitive).max() {
            if needed > max_len {
                return Err(Error::BoundTooSmall {
                    level,
                    max_len,
                    needed,
                });
            }
        }
        let filtered: Vec<Vec<Word>> = words
            .par_iter()
            .map(|w| {
                primitives(w)
                    .into_iter()
                    .filter(|v| is_lfe(v, None))
                    .collect()
            })
            .collect();
        let mut next: Vec<Word> = filtered.into_iter().flatten().collect();
        next.par_sort_unstable();
        next.dedup();
        guard("LFE oracle level", next.len() as u64, max_states)?;
        words = next;
    }
    Ok(LfeLevel { alphabet, j, words })
}

/// Smooth words of one length, grown one letter at a time. Extending on the right and keeping
/// smooth results is complete because factors of smooth words are smooth.
#[derive(Debug, Clone)]
pub struct SmoothFrontier {
    alphabet: Alphabet,
    len: usize,
    words: Vec<Word>,
    max_states: u64,
}

impl SmoothFrontier {
    pub fn new(alphabet: Alphabet, max_states: u64) -> Self {
        SmoothFrontier {
            alphabet,
            len: 0,
            words: vec![Word::empty(alphabet)],
            max_states,
        }
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn advance(&mut self, cache: Option<&SmoothCache>) -> Result<()> {
        let letters = self.alphabet.letters();
        guard(
            "smooth frontier",
            2 * self.words.len() as u64,
            self.max_states.saturating_mul(2),
        )?;
        let next: Vec<Vec<Word>> = self
            .words
            .par_iter()
            .map(|w| {
                letters
                    .iter()
                    .map(|&x| w.append(x, 1).expect("letter from alphabet"))
                    .filter(|v| is_smooth(v, cache))
                    .collect()
            })
            .collect();
        let mut next: Vec<Word> = next.into_iter().flatten().collect();
        next.par_sort_unstable();
        guard("smooth frontier", next.len() as u64, self.max_states)?;
        self.words = next;
        self.len += 1;
        Ok(())
    }

    pub fn advance_to(&mut self, len: usize, cache: Option<&SmoothCache>) -> Result<()> {
        while self.len < len {
            self.advance(cache)?;
        }
        Ok(())
    }

    /// LFE words of the current length.
    pub fn lfe_words(&self, cache: Option<&SmoothCache>) -> Vec<Word> {
        self.words
            .par_iter()
            .filter(|w| is_lfe(w, cache))
            .cloned()
            .collect()
    }
}

/// `LF_k` from the smooth frontier.
pub fn lf_k(alphabet: Alphabet, k: usize, max_states: u64) -> Result<LfeLengthClass> {
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    frontier.advance_to(k, None)?;
    Ok(LfeLengthClass {
        alphabet,
        k,
        words: frontier.lfe_words(None),
    })
}

/// Number of `D` applications taking `w` to `ε` (`0` for `ε`), or `None` if a step fails.
pub fn d_depth(w: &Word) -> Option<u32> {
    let mut cur = w.clone();
    let mut depth = 0;
    while !cur.is_empty() {
        cur = derivative(&cur).into_word()?;
        depth += 1;
    }
    Some(depth)
}

/// `P^j(ε)` restricted to words of length at most `max_len`, from the smooth frontier:
/// every LFE word up to `max_len` is grouped by its `D`-depth.
pub fn p_levels_bruteforce(
    alphabet: Alphabet,
    max_len: usize,
    max_states: u64,
) -> Result<Vec<Vec<Word>>> {
    let mut levels: Vec<Vec<Word>> = Vec::new();
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    for _ in 1..=max_len {
        frontier.advance(None)?;
        for u in frontier.lfe_words(None) {
            let depth = d_depth(&u)
                .ok_or_else(|| Error::Internal(format!("LFE word {u} has no D-chain")))?;
            let idx = depth as usize;
            if levels.len() <= idx {
                levels.resize(idx + 1, Vec::new());
            }
            levels[idx].push(u);
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(levels)
}

/// Per-length statistics of the LFE words reachable in the expansion tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthStats {
    pub count: u64,
    pub min_height: Option<u32>,
    pub max_height: Option<u32>,
    pub min_b_ratio: Option<Ratio<u64>>,
    pub min_a_ratio: Option<Ratio<u64>>,
    /// Shortest derivative length.
    pub min_d_len: Option<usize>,
}

impl LengthStats {
    fn empty() -> Self {
        LengthStats {
            count: 0,
            min_height: None,
            max_height: None,
            min_b_ratio: None,
            min_a_ratio: None,
            min_d_len: None,
        }
    }

    fn add(&mut self, w: &Word, height: u32, d_len: usize) {
        let n = w.len() as u64;
        self.count += 1;
        self.min_height = opt_min(self.min_height, Some(height));
        self.max_height = Some(self.max_height.map_or(height, |h| h.max(height)));
        self.min_b_ratio = opt_min(self.min_b_ratio, Some(Ratio::new(w.count_b() as u64, n)));
        self.min_a_ratio = opt_min(self.min_a_ratio, Some(Ratio::new(w.count_a() as u64, n)));
        self.min_d_len = opt_min(self.min_d_len, Some(d_len));
    }

    fn merge(&mut self, other: &LengthStats) {
        self.count += other.count;
        self.min_height = opt_min(self.min_height, other.min_height);
        self.max_height = match (self.max_height, other.max_height) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        self.min_b_ratio = opt_min(self.min_b_ratio, other.min_b_ratio);
        self.min_a_ratio = opt_min(self.min_a_ratio, other.min_a_ratio);
        self.min_d_len = opt_min(self.min_d_len, other.min_d_len);
    }
}

fn opt_min<T: Ord>(x: Option<T>, y: Option<T>) -> Option<T> {
    match (x, y) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn walk(w: &Word, parent_len: usize, level: u32, max_len: usize, stats: &mut [LengthStats]) {
    stats[w.len()].add(w, level - 1, parent_len);
    let a = w.alphabet().a() as usize;
    if a + w.letters().map(|l| l as usize).sum::<usize>() > max_len {
        return;
    }
    for child in lfe_candidates(w) {
        if child.len() <= max_len && is_lfe(&child, None) {
            walk(&child, w.len(), level + 1, max_len, stats);
        }
    }
}

/// Walks the constructive expansion tree below `ε`, collecting per-length counts, heights and
/// minimal `b`-frequencies for every LFE word of length `1..=max_len`. Index `k` of the result
/// describes length `k`; index 0 is left empty. Heights are `level - 1`.
///
pub fn lfe_tree_stats(alphabet: Alphabet, max_len: usize) -> Vec<LengthStats> {
    let roots: Vec<Word> = lfe_candidates(&Word::empty(alphabet))
        .into_iter()
        .filter(|w| w.len() <= max_len && is_lfe(w, None))
        .collect();
    // second level as parallel work units
    let units: Vec<(usize, Word)> = roots
        .iter()
        .flat_map(|r| {
            lfe_candidates(r)
                .into_iter()
                .filter(|c| c.len() <= max_len && is_lfe(c, None))
                .map(|c| (r.len(), c))
        })
        .collect();
    let partials: Vec<Vec<LengthStats>> = units
        .par_iter()
        .map(|(parent_len, u)| {
            let mut stats = vec![LengthStats::empty(); max_len + 1];
            walk(u, *parent_len, 2, max_len, &mut stats);
            stats
        })
        .collect();
    let mut stats = vec![LengthStats::empty(); max_len + 1];
    for r in &roots {
        stats[r.len()].add(r, 0, 0);
    }
    for part in &partials {
        for (acc, p) in stats.iter_mut().zip(part) {
            acc.merge(p);
        }
    }
    stats
}

/// One line of a JSON-lines enumeration dump.
#[derive(Debug, Clone, Serialize)]
pub struct WordRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub length: usize,
    pub ends_with: Option<u32>,
    pub word: String,
    pub rle: RleJson,
}

impl WordRecord {
    pub fn new(w: &Word, level: Option<u32>) -> Self {
        WordRecord {
            level,
            length: w.len(),
            ends_with: w.last_letter(),
            word: w.to_text(),
            rle: RleJson::from(w.clone()),
        }
    }
}

pub fn to_jsonl(words: &[Word], level: Option<u32>) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&serde_json::to_string(&WordRecord::new(w, level)).expect("serializable"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::all_words;

    fn ab(a: u32, b: u32) -> Alphabet {
        Alphabet::new(a, b).unwrap()
    }

    #[test]
    fn expand_empty_word() {
        assert_eq!(lfe_expand(&Word::empty(ab(1, 2)), None).unwrap().len(), 4);
        assert_eq!(lfe_expand(&Word::empty(ab(2, 4)), None).unwrap().len(), 12);
        assert_eq!(lfe_expand(&Word::empty(ab(2, 3)), None).unwrap().len(), 8);
    }

    #[test]
    fn candidates_are_all_lfe_when_b_is_a_plus_one() {
        for s in [ab(1, 2), ab(2, 3), ab(4, 5)] {
            let level = p_level(s, 2, DEFAULT_MAX_STATES).unwrap();
            for w in &level.words {
                assert!(lfe_candidates(w).iter().all(|v| is_lfe(v, None)), "{s} {w}");
            }
        }
    }

    #[test]
    fn wide_alphabet_candidate_rejected_by_closure() {
        // 4422444 derives to 2, but 4·4422444 closes to 4444224444 whose rho is 424
        let s = ab(2, 4);
        let parent = Word::parse(s, "2").unwrap();
        let bad = Word::parse(s, "4422444").unwrap();
        assert!(lfe_candidates(&parent).contains(&bad));
        assert!(!is_lfe(&bad, None));
        assert!(!lfe_expand(&parent, None).unwrap().contains(&bad));
    }

    #[test]
    fn expand_counts_by_last_letter() {
        let s = ab(2, 3);
        let level = p_level(s, 2, DEFAULT_MAX_STATES).unwrap();
        for w in &level.words {
            let children = lfe_expand(w, None).unwrap();
            let expected = if w.last_letter() == Some(3) { 6 } else { 4 };
            assert_eq!(children.len(), expected, "{w}");
            for c in &children {
                assert!(is_lfe(c, None));
                assert_eq!(derivative(c).word(), Some(w));
            }
        }
    }

    #[test]
    fn expand_rejects_non_lfe() {
        assert_eq!(
            lfe_expand(&Word::parse(ab(1, 2), "22").unwrap(), None),
            Err(Error::NotLfe)
        );
    }

    #[test]
    fn level_examples() {
        assert_eq!(
            p_level(ab(1, 2), 1, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            4
        );
        assert_eq!(
            p_level(ab(1, 2), 3, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            36
        );
        assert_eq!(
            p_level(ab(2, 3), 2, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            40
        );
        assert_eq!(
            p_level(ab(3, 4), 4, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            4116
        );
        // closure cuts the wide alphabets below 4(b-1)(2b-1)^{j-1}
        assert_eq!(
            p_level(ab(2, 4), 1, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            12
        );
        assert_eq!(
            p_level(ab(2, 4), 4, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            2696
        );
        assert!(p_level(ab(1, 2), 0, DEFAULT_MAX_STATES).is_err());
    }

    #[test]
    fn level_resource_guard() {
        let err = p_level(ab(3, 4), 4, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }), "{err}");
    }

    #[test]
    fn oracle_matches_construction_small() {
        for (s, j) in [(ab(1, 2), 1), (ab(2, 3), 2), (ab(1, 3), 3), (ab(2, 4), 2)] {
            let built = p_level(s, j, DEFAULT_MAX_STATES).unwrap();
            let oracle = p_level_oracle(s, j, 10_000, DEFAULT_MAX_STATES).unwrap();
            assert_eq!(built, oracle);
        }
        assert_eq!(
            p_level_oracle(ab(2, 4), 1, 100, DEFAULT_MAX_STATES)
                .unwrap()
                .words
                .len(),
            12
        );
    }

    #[test]
    fn oracle_bound_too_small() {
        let err = p_level_oracle(ab(1, 2), 3, 3, DEFAULT_MAX_STATES).unwrap_err();
        assert!(matches!(err, Error::BoundTooSmall { .. }), "{err}");
    }

    #[test]
    fn lf_k_examples() {
        let s = ab(1, 2);
        let lf0 = lf_k(s, 0, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(lf0.words, vec![Word::empty(s)]);
        for k in 1..=8 {
            let class = lf_k(s, k, DEFAULT_MAX_STATES).unwrap();
            for w in &class.words {
                assert!(is_lfe(w, None));
                assert_eq!(w.len(), k);
            }
            // brute-force count over all words of length k
            let brute = all_words(s, k)
                .into_iter()
                .filter(|w| is_smooth(w, None) && is_lfe(w, None))
                .count();
            assert_eq!(class.words.len(), brute);
        }
    }

    #[test]
    fn bruteforce_levels_match_construction() {
        for s in [ab(1, 2), ab(2, 3), ab(2, 4), ab(1, 3)] {
            let max_len = 14;
            let levels = p_levels_bruteforce(s, max_len, DEFAULT_MAX_STATES).unwrap();
            for (j, words) in levels.iter().enumerate().skip(1) {
                let built = p_level(s, j as u32, DEFAULT_MAX_STATES).unwrap();
                let short: Vec<Word> = built
                    .words
                    .into_iter()
                    .filter(|w| w.len() <= max_len)
                    .collect();
                assert_eq!(&short, words, "{s} level {j}");
            }
        }
    }

    #[test]
    fn tree_stats_match_frontier() {
        for s in [ab(1, 2), ab(2, 3), ab(2, 4)] {
            let max_len = 16;
            let stats = lfe_tree_stats(s, max_len);
            let mut frontier = SmoothFrontier::new(s, DEFAULT_MAX_STATES);
            for k in 1..=max_len {
                frontier.advance(None).unwrap();
                let lfe = frontier.lfe_words(None);
                assert_eq!(stats[k].count, lfe.len() as u64, "{s} k={k}");
                let heights: Vec<u32> = lfe
                    .iter()
                    .map(|w| crate::smooth::height(w, None).unwrap())
                    .collect();
                assert_eq!(stats[k].min_height, heights.iter().copied().min());
                assert_eq!(stats[k].max_height, heights.iter().copied().max());
            }
        }
    }

    #[test]
    fn jsonl_records() {
        let s = ab(1, 2);
        let level = p_level(s, 1, DEFAULT_MAX_STATES).unwrap();
        let text = to_jsonl(&level.words, Some(1));
        assert_eq!(text.lines().count(), 4);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["level"], 1);
        assert_eq!(first["word"], "1");
        assert_eq!(first["ends_with"], 1);
        assert_eq!(first["rle"]["runs"][0][1], 1);
    }
}
