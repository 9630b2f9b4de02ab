//! Property sweeps shared by the `verify-all` command and the acceptance suite.
//!
//! Every check returns a [`Check`] rather than panicking, so callers can print one line per
//! property and decide how to exit.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::complexity::{
    balance_details, even_exponent, even_ranges, fit_window, gamma_bruteforce_series, gamma_table,
    gamma_table_tree, growth_report,
};
use crate::error::{Error, Result};
use crate::kolakoski::{self, factor_smoothness_check, max_prefix_density};
use crate::lfe::{level_size_formula, p_level, p_level_oracle, SmoothFrontier};
use crate::operators::{closure, derivative, generic_run_length_derivative, primitives, rho};
use crate::smooth::{height, is_lfe, is_smooth};
use crate::word::{Alphabet, Run, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_failures(name: impl Into<String>, checked: usize, failures: &[String]) -> Self {
        let detail = match failures.first() {
            None => format!("{checked} cases, 0 violations"),
            Some(first) => format!(
                "{checked} cases, {} violations; first: {first}",
                failures.len()
            ),
        };
        Check::new(name, failures.is_empty(), detail)
    }

    fn from_error(name: impl Into<String>, err: &Error) -> Self {
        Check::new(name, false, format!("error: {err}"))
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn wrap(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::from_error(name, &e))
}

/// Largest `j` whose formula level size stays within `cap`.
pub fn levels_within(alphabet: Alphabet, cap: u64) -> u32 {
    let mut j = 0;
    while level_size_formula(alphabet, j + 1) <= cap {
        j += 1;
    }
    j
}

/// `|P^j(ε)| = 4(b-1)(2b-1)^{j-1}` for every `j` with formula size at most `cap`.
pub fn counting_law(alphabet: Alphabet, cap: u64, max_states: u64) -> Check {
    let name = format!("counting law {alphabet}");
    wrap(&name, || {
        let mut parts = Vec::new();
        let mut bad = Vec::new();
        for j in 1..=levels_within(alphabet, cap) {
            let got = p_level(alphabet, j, max_states)?.words.len() as u64;
            let want = level_size_formula(alphabet, j);
            parts.push(format!("j={j}:{got}/{want}"));
            if got != want {
                bad.push(j);
            }
        }
        Ok(Check::new(&name, bad.is_empty(), parts.join(" ")))
    })
}

/// Constructed levels equal the preimage-filter oracle.
pub fn construction_matches_oracle(alphabet: Alphabet, cap: u64, max_states: u64) -> Check {
    let name = format!("construction = oracle {alphabet}");
    wrap(&name, || {
        let mut bad = Vec::new();
        let levels = levels_within(alphabet, cap);
        for j in 1..=levels {
            let built = p_level(alphabet, j, max_states)?.words;
            let oracle = p_level_oracle(alphabet, j, usize::MAX, max_states)?.words;
            if built != oracle {
                bad.push(format!("j={j}: {} vs {}", built.len(), oracle.len()));
            }
        }
        Ok(Check::from_failures(&name, levels as usize, &bad))
    })
}

/// `γ(n) = 2 + Σ|LF_i|` from the frontier and from the expansion tree, against direct counts.
pub fn gamma_identity(alphabet: Alphabet, n_max: usize, max_states: u64) -> Check {
    let name = format!("gamma identity {alphabet}");
    wrap(&name, || {
        let brute = gamma_bruteforce_series(alphabet, n_max, max_states)?;
        let frontier = gamma_table(alphabet, n_max, max_states)?;
        let tree = gamma_table_tree(alphabet, n_max);
        let mut bad = Vec::new();
        for n in 1..=n_max {
            let (f, t) = (frontier.gamma(n), tree.gamma(n));
            if f != Some(brute[n]) || t != Some(brute[n]) {
                bad.push(format!(
                    "n={n}: brute {} frontier {f:?} tree {t:?}",
                    brute[n]
                ));
            }
        }
        bad.extend(frontier.invariant_violations());
        Ok(Check::from_failures(
            format!("{name} (gamma({n_max})={})", brute[n_max]),
            n_max,
            &bad,
        ))
    })
}

fn ab(a: u32, b: u32) -> Alphabet {
    Alphabet::new(a, b).expect("valid alphabet")
}

fn expand(spec: &[(u32, usize)]) -> Vec<u32> {
    spec.iter()
        .flat_map(|&(l, n)| std::iter::repeat_n(l, n))
        .collect()
}

/// Worked examples: closures, a height, the primitives of `b`, and nine three-letter derivatives.
pub fn worked_examples() -> Check {
    let name = "worked examples";
    wrap(name, || {
        let mut bad = Vec::new();
        let s13 = ab(1, 3);
        for (input, want) in [
            ("3311133313133311133", "333111333131333111333"),
            ("3313133311", "333131333111"),
        ] {
            let got = closure(&Word::parse(s13, input)?)?.to_text();
            if got != want {
                bad.push(format!("closure({input}) = {got}"));
            }
        }
        let u = Word::parse(s13, "3313133311")?;
        if rho(&u).word().map(Word::to_text).as_deref() != Some("311133") {
            bad.push("rho(3313133311) != 311133".into());
        }
        let hw = Word::from_runs(
            ab(2, 3),
            [
                (3, 1),
                (2, 3),
                (3, 3),
                (2, 3),
                (3, 2),
                (2, 2),
                (3, 2),
                (2, 3),
                (3, 3),
                (2, 3),
                (3, 1),
            ]
            .map(|(l, n)| Run::new(l, n)),
        )?;
        if height(&hw, None)? != 3 {
            bad.push(format!("height({hw}) != 3"));
        }
        for s in [ab(1, 2), ab(1, 3), ab(2, 3), ab(2, 4), ab(3, 5)] {
            let b = s.b();
            let p = primitives(&Word::new(s, &[b])?);
            let min = p.iter().map(Word::len).min().unwrap_or(0);
            let shortest: BTreeSet<Word> = p.iter().filter(|v| v.len() == min).cloned().collect();
            let expected: BTreeSet<Word> = s
                .letters()
                .iter()
                .map(|&l| Word::new(s, &vec![l; b as usize]))
                .collect::<Result<_>>()?;
            if p.len() as u32 != 2 * b * b || shortest != expected {
                bad.push(format!("primitives of {b} over {s}: {} words", p.len()));
            }
        }
        let cases: &[(&[(u32, usize)], &[(u32, usize)])] = &[
            (
                &[
                    (6, 1),
                    (4, 2),
                    (2, 6),
                    (6, 6),
                    (4, 6),
                    (6, 6),
                    (2, 6),
                    (4, 6),
                ],
                &[(2, 1), (6, 6)],
            ),
            (
                &[(4, 1), (2, 6), (6, 6), (4, 6), (6, 6), (2, 6), (4, 6)],
                &[(6, 6)],
            ),
            (&[(4, 1), (2, 6), (6, 6), (4, 6), (6, 6), (2, 6)], &[(6, 5)]),
            (&[(4, 6), (2, 2), (6, 2)], &[(6, 1), (2, 1)]),
            (
                &[
                    (2, 6),
                    (6, 6),
                    (2, 6),
                    (6, 6),
                    (2, 6),
                    (6, 6),
                    (4, 4),
                    (6, 2),
                ],
                &[(6, 6), (4, 1)],
            ),
            (&[(2, 6), (4, 6), (2, 2), (6, 2)], &[(6, 2), (2, 1)]),
            (&[(2, 2), (6, 2), (4, 6)], &[(2, 1), (6, 1)]),
            (
                &[
                    (4, 4),
                    (2, 2),
                    (6, 2),
                    (2, 2),
                    (6, 2),
                    (2, 2),
                    (6, 2),
                    (4, 6),
                ],
                &[(2, 6), (6, 1)],
            ),
            (&[(2, 2), (4, 2), (6, 2)], &[(2, 1)]),
        ];
        for (i, (word, want)) in cases.iter().enumerate() {
            if generic_run_length_derivative(&expand(word), 6)? != expand(want) {
                bad.push(format!("three-letter derivative #{}", i + 1));
            }
        }
        if kolakoski::kolakoski(18).to_text() != "221121221221121122" {
            bad.push("Kolakoski prefix".into());
        }
        Ok(Check::from_failures(name, 5 + cases.len() + 1, &bad))
    })
}

/// All smooth words of length `0..=max_len`, grouped by length.
pub fn smooth_words_by_length(
    alphabet: Alphabet,
    max_len: usize,
    max_states: u64,
) -> Result<Vec<Vec<Word>>> {
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    let mut out = vec![frontier.words().to_vec()];
    for _ in 1..=max_len {
        frontier.advance(None)?;
        out.push(frontier.words().to_vec());
    }
    Ok(out)
}

fn operator_failures(w: &Word) -> Vec<String> {
    let s = w.alphabet();
    let (a, b) = (s.a(), s.b());
    let mut bad = Vec::new();
    let mut fail = |what: &str| bad.push(format!("{w}: {what}"));
    let Some(d) = derivative(w).into_word() else {
        fail("smooth word not differentiable");
        return bad;
    };
    if !w.is_empty()
        && (!is_smooth(&w.factor(1, w.len() - 1), None)
            || !is_smooth(&w.factor(0, w.len() - 1), None))
        {
            fail("factor not smooth");
        }
    if derivative(&w.complement()).into_word().as_ref() != Some(&d) {
        fail("D(complement) != D");
    }
    if derivative(&w.reversal()).into_word() != Some(d.reversal()) {
        fail("D(reversal) != reversal(D)");
    }
    match closure(w) {
        Ok(c) => {
            if closure(&w.complement()).ok() != Some(c.complement())
                || closure(&w.reversal()).ok() != Some(c.reversal())
            {
                fail("closure does not commute");
            }
            if !c.contains_factor(w) {
                fail("w is not a factor of its closure");
            }
        }
        Err(_) => fail("closure undefined"),
    }
    if rho(&w.complement()).into_word() != rho(w).into_word() {
        fail("rho(complement) != rho");
    }
    if w.run_count() > d.len() + 2 {
        fail("r(w) > |D(w)| + 2");
    }
    let base = d.len() + (a as usize - 1) * d.count_a() + (b as usize - 1) * d.count_b();
    if w.len() < base || w.len() - base > 2 * (b as usize - 1) {
        fail("length identity");
    }
    // extension identities, for n >= a + 1
    if w.len() > a as usize {
        let first = w.first_letter().expect("nonempty");
        let lfr = w.runs()[0].len;
        if lfr == b {
            if derivative(&w.prepend(first, 1).expect("letter")).is_ok() {
                fail("w1·w differentiable although lfr = b");
            }
            for i in 1..b {
                if derivative(&w.prepend(s.other(first), i).expect("letter"))
                    .into_word()
                    .as_ref()
                    != Some(&d)
                {
                    fail("D(w̄1^i w) != D(w)");
                }
            }
        } else {
            let ext = derivative(&w.prepend(first, b - lfr).expect("letter")).into_word();
            if ext != d.prepend(b, 1).ok() {
                fail("D(w1^{b-lfr} w) != b D(w)");
            }
        }
        if lfr <= a && w.run_count() > 1 {
            let v = w
                .prepend(first, a - lfr)
                .and_then(|v| v.prepend(s.other(first), 1))
                .expect("letter");
            if derivative(&v).into_word() != d.prepend(a, 1).ok() {
                fail("D(w̄1 w1^{a-lfr} w) != a D(w)");
            }
        }
    }
    bad
}

/// Operator identities over every smooth word up to `max_len`.
pub fn operator_algebra(alphabet: Alphabet, max_len: usize, max_states: u64) -> Check {
    let name = format!("operator algebra {alphabet} |w|<={max_len}");
    wrap(&name, || {
        let words: Vec<Word> = smooth_words_by_length(alphabet, max_len, max_states)?.concat();
        let bad: Vec<String> = words.par_iter().flat_map(operator_failures).collect();
        Ok(Check::from_failures(&name, words.len(), &bad))
    })
}

fn lfe_failures(w: &Word) -> Vec<String> {
    let s = w.alphabet();
    let mut bad = Vec::new();
    if !is_lfe(w, None) {
        return bad;
    }
    if !is_lfe(&w.complement(), None) {
        bad.push(format!("{w}: complement not LFE"));
    }
    match derivative(w).into_word() {
        Some(d) if is_lfe(&d, None) => {}
        _ => bad.push(format!("{w}: D(w) not LFE")),
    }
    if w.len() >= s.b() as usize || w.run_count() > 1 {
        let runs = w.runs();
        if runs[0].len != s.a() || runs.len() < 2 {
            bad.push(format!(
                "{w}: prefix is not w1^a w_(a+1) with w_(a+1) != w1"
            ));
        }
    }
    bad
}

/// LFE properties over every smooth word up to `max_len`.
pub fn lfe_properties(alphabet: Alphabet, max_len: usize, max_states: u64) -> Check {
    let name = format!("LFE properties {alphabet} |w|<={max_len}");
    wrap(&name, || {
        let words: Vec<Word> = smooth_words_by_length(alphabet, max_len, max_states)?.concat();
        let bad: Vec<String> = words.par_iter().flat_map(lfe_failures).collect();
        let lfe = words.par_iter().filter(|w| is_lfe(w, None)).count();
        Ok(Check::from_failures(
            format!("{name} ({lfe} LFE)"),
            words.len(),
            &bad,
        ))
    })
}

/// Balance and length sandwich over smooth words of an even alphabet.
pub fn even_balance(alphabet: Alphabet, max_len: usize, max_states: u64) -> Check {
    let name = format!("even balance {alphabet} |w|<={max_len}");
    wrap(&name, || {
        let words: Vec<Word> = smooth_words_by_length(alphabet, max_len, max_states)?.concat();
        let mut checked = 0;
        let mut bad = Vec::new();
        for w in &words {
            match balance_details(w) {
                Ok(d) => {
                    checked += 1;
                    if !(d.balanced && d.length_sandwich) {
                        bad.push(format!("{w}: {d:?}"));
                    }
                }
                Err(Error::NotTwiceDifferentiable) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Check::from_failures(&name, checked, &bad))
    })
}

/// Ranges of the even-alphabet height constants.
pub fn even_constant_ranges(b_max: u32) -> Check {
    let name = format!("even constants b<={b_max}");
    wrap(&name, || {
        let r = even_ranges(b_max)?;
        Ok(Check::new(
            &name,
            r.ok(),
            format!(
                "{} pairs, t1 in [{:.4}, {:.4}], t2 in [{:.4}, {:.4}] (min at {}), out of range: {}",
                r.pairs,
                r.t1_min,
                r.t1_max,
                r.t2_min,
                r.t2_max,
                r.t2_argmin,
                r.out_of_range.len()
            ),
        ))
    })
}

/// Height bounds and growth sandwich on the tree-enumerated horizon.
pub fn growth_sandwich_check(alphabet: Alphabet, n0: usize, n_max: usize) -> Check {
    let name = format!("growth sandwich {alphabet} n0={n0} n<={n_max}");
    wrap(&name, || {
        let table = gamma_table_tree(alphabet, n_max);
        let r = growth_report(&table, n0, n_max)?;
        let detail = format!(
            "xi={} N0={} exponents [{:.4}, {:.4}] t1={:.4} t2={:.4} (fitted), {} violations",
            r.estimate.xi,
            r.estimate.big_n0.map_or("-".to_string(), |x| x.to_string()),
            r.exponent_lower,
            r.exponent_upper,
            r.t1,
            r.t2,
            r.violations.len()
        );
        Ok(Check::new(&name, r.violations.is_empty(), detail))
    })
}

/// Fitted log-log slopes over `[8, 2^k]` for growing `k`: the last must lie within `tol` of the
/// even-alphabet exponent, and the gap must not grow from one window to the next.
pub fn even_exponent_trend(alphabet: Alphabet, n_max: usize, tol: f64) -> Check {
    let name = format!("even exponent trend {alphabet} n<={n_max}");
    wrap(&name, || {
        let target = even_exponent(alphabet)?;
        let table = gamma_table_tree(alphabet, n_max);
        let mut gaps = Vec::new();
        let mut hi = 32;
        while hi <= n_max {
            gaps.push((hi, (target - fit_window(&table, 8, hi)?.slope).abs()));
            hi *= 2;
        }
        let Some(&(_, last)) = gaps.last() else {
            return Err(Error::InsufficientData(format!("n_max={n_max} below 32")));
        };
        let shrinking = gaps.windows(2).all(|p| p[1].1 <= p[0].1);
        let trace: Vec<String> = gaps.iter().map(|(h, g)| format!("{h}:{g:.4}")).collect();
        Ok(Check::new(
            &name,
            last <= tol && shrinking,
            format!("target {target:.4}, gap by window end {}", trace.join(" ")),
        ))
    })
}

/// Prefix, factor smoothness and density band for the classical sequence.
pub fn kolakoski_checks(n: usize, factor_prefix: usize, max_window: usize) -> Check {
    let name = "kolakoski";
    wrap(name, || {
        let mut bad = Vec::new();
        let k = kolakoski::kolakoski(n.max(factor_prefix));
        if k.factor(0, 18).to_text() != "221121221221121122" {
            bad.push("prefix mismatch".to_string());
        }
        let head = k.factor(0, factor_prefix);
        for window in 1..=max_window {
            if !factor_smoothness_check(&head, window)? {
                bad.push(format!("non-smooth factor of length {window}"));
            }
        }
        let k = k.factor(0, n);
        let d = kolakoski::density(&k, 1)?;
        let d = *d.numer() as f64 / *d.denom() as f64;
        if !(d > 0.49 && d < 0.510) {
            bad.push(format!("density {d}"));
        }
        let m = max_prefix_density(
            &k,
            1,
            kolakoski::DENSITY_BURN_IN.min(n),
            kolakoski::DENSITY_STEP,
        )?;
        if m >= 0.502838 {
            bad.push(format!("max prefix density {m}"));
        }
        let detail = if bad.is_empty() {
            format!(
                "n={n}: density(1)={d:.6}, max prefix density={m:.6}, windows<={max_window} smooth"
            )
        } else {
            bad.join("; ")
        };
        Ok(Check::new(name, bad.is_empty(), detail))
    })
}

/// Sizes for [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub level_cap: u64,
    pub gamma_n: usize,
    pub property_len: usize,
    pub even_len: usize,
    pub even_b_max: u32,
    pub bound_n: usize,
    pub bound_n0: usize,
    pub trend_n: usize,
    pub kolakoski_n: usize,
    pub max_states: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            level_cap: 10_000,
            gamma_n: 16,
            property_len: 12,
            even_len: 22,
            even_b_max: 58,
            bound_n: 64,
            bound_n0: 8,
            trend_n: 256,
            kolakoski_n: 100_000,
            max_states: crate::lfe::DEFAULT_MAX_STATES,
        }
    }
}

/// Every check for one alphabet. Even-alphabet checks are included only for even alphabets.
pub fn sweep(alphabet: Alphabet, cfg: &SweepConfig) -> Vec<Check> {
    let mut out = vec![
        counting_law(alphabet, cfg.level_cap, cfg.max_states),
        construction_matches_oracle(alphabet, cfg.level_cap, cfg.max_states),
        gamma_identity(alphabet, cfg.gamma_n, cfg.max_states),
        worked_examples(),
        operator_algebra(alphabet, cfg.property_len, cfg.max_states),
        lfe_properties(alphabet, cfg.property_len, cfg.max_states),
        growth_sandwich_check(alphabet, cfg.bound_n0, cfg.bound_n),
    ];
    if alphabet.is_even() {
        out.push(even_balance(alphabet, cfg.even_len, cfg.max_states));
        out.push(even_constant_ranges(cfg.even_b_max));
        out.push(even_exponent_trend(alphabet, cfg.trend_n, 0.25));
    }
    out.push(kolakoski_checks(
        cfg.kolakoski_n,
        10_000.min(cfg.kolakoski_n),
        12,
    ));
    out
}
