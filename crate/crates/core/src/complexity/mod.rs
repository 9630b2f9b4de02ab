//! Subword complexity `γ(n)` and the quantities the growth bounds are built from.
//!
//! `γ(k) = 2 + Σ_{i=1}^{k-1} |LF_i|` for `k >= 1`, so a table of LFE statistics by length
//! determines the complexity function. Two table builders exist: one from the smooth-word
//! frontier (exact, exhaustive, small `n`) and one from the LFE expansion tree (reaches much
//! larger `n`). [`gamma_bruteforce`] counts smooth words directly and serves as the oracle.

mod bounds;
mod even;
mod fit;

pub use bounds::{
    estimate_xi, growth_exponents, growth_report, growth_sandwich, height_bounds_check,
    BoundReport, Violation, XiEstimate,
};
pub use even::{
    balance_check, balance_details, even_constants, even_exponent, even_ranges, BalanceDetails,
    EvenAlphabetConstants, EvenRanges,
};
pub use fit::{fit_exponent, fit_window, FitResult};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lfe::{lfe_tree_stats, SmoothFrontier};
use crate::operators::derivative;
use crate::smooth::height;
use crate::word::Alphabet;

/// How a [`ComplexityTable`] was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMethod {
    /// Exhaustive smooth-word frontier filtered by the LFE test.
    Frontier,
    /// Walk of the LFE expansion tree.
    Tree,
}

fn ser_ratio<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

/// One length `n` of a complexity table; LFE statistics range over `LF_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub gamma: u64,
    pub lf_count: u64,
    pub ht_min: Option<u32>,
    pub ht_max: Option<u32>,
    #[serde(serialize_with = "ser_ratio")]
    pub min_b_ratio: Option<Ratio<u64>>,
    #[serde(serialize_with = "ser_ratio")]
    pub min_a_ratio: Option<Ratio<u64>>,
    /// Shortest derivative among the LFE words of this length.
    pub min_d_len: Option<usize>,
    /// Height range over all smooth words of this length (frontier tables only).
    pub smooth_ht_min: Option<u32>,
    pub smooth_ht_max: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityTable {
    pub alphabet: Alphabet,
    pub method: TableMethod,
    /// Rows for `n = 1..=n_max`.
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityTable {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// `γ(n)`, with `γ(0) = 1`.
    pub fn gamma(&self, n: usize) -> Option<u64> {
        if n == 0 {
            Some(1)
        } else {
            self.rows.get(n - 1).map(|r| r.gamma)
        }
    }

    pub fn row(&self, n: usize) -> Option<&ComplexityRow> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// CSV with header `n,gamma,lf_count,ht_min,ht_max,min_b_ratio`.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["n", "gamma", "lf_count", "ht_min", "ht_max", "min_b_ratio"])
            .expect("in-memory write");
        let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            let ratio = r
                .min_b_ratio
                .map(|q| format!("{}/{}", q.numer(), q.denom()))
                .unwrap_or_default();
            wtr.write_record([
                r.n.to_string(),
                r.gamma.to_string(),
                r.lf_count.to_string(),
                opt(r.ht_min),
                opt(r.ht_max),
                ratio,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
    }

    /// Checks the table invariants: `γ` nondecreasing, `γ(n+1) - γ(n) = |LF_n|`,
    /// `ht_min <= ht_max`. Returns a description of each failure.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for pair in self.rows.windows(2) {
            let (r, next) = (&pair[0], &pair[1]);
            if next.gamma < r.gamma {
                out.push(format!("gamma decreases at n={}", next.n));
            }
            if next.gamma - r.gamma.min(next.gamma) != r.lf_count {
                out.push(format!(
                    "gamma({}) - gamma({}) != |LF_{}|",
                    next.n, r.n, r.n
                ));
            }
        }
        for r in &self.rows {
            if let (Some(lo), Some(hi)) = (r.ht_min, r.ht_max) {
                if lo > hi {
                    out.push(format!("ht_min > ht_max at n={}", r.n));
                }
            }
        }
        out
    }
}

fn gamma_from_lf(lf_counts: &[u64]) -> Vec<u64> {
    // lf_counts[i] = |LF_{i+1}|; γ(k) = 2 + Σ_{i=1}^{k-1} |LF_i|
    let mut out = Vec::with_capacity(lf_counts.len());
    let mut acc = 2u64;
    for (idx, _) in lf_counts.iter().enumerate() {
        if idx > 0 {
            acc += lf_counts[idx - 1];
        }
        out.push(acc);
    }
    out
}

fn ratio(num: usize, den: usize) -> Ratio<u64> {
    Ratio::new(num as u64, den as u64)
}

/// Complexity table for `n = 1..=n_max` from the exhaustive smooth-word frontier.
pub fn gamma_table(alphabet: Alphabet, n_max: usize, max_states: u64) -> Result<ComplexityTable> {
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        frontier.advance(None)?;
        let lfe = frontier.lfe_words(None);
        let mut row = ComplexityRow {
            n,
            gamma: 0,
            lf_count: lfe.len() as u64,
            ht_min: None,
            ht_max: None,
            min_b_ratio: None,
            min_a_ratio: None,
            min_d_len: None,
            smooth_ht_min: None,
            smooth_ht_max: None,
        };
        for w in &lfe {
            let h = height(w, None)?;
            row.ht_min = Some(row.ht_min.map_or(h, |x| x.min(h)));
            row.ht_max = Some(row.ht_max.map_or(h, |x| x.max(h)));
            let rb = ratio(w.count_b(), n);
            let ra = ratio(w.count_a(), n);
            row.min_b_ratio = Some(row.min_b_ratio.map_or(rb, |x| x.min(rb)));
            row.min_a_ratio = Some(row.min_a_ratio.map_or(ra, |x| x.min(ra)));
            let d = derivative(w)
                .into_word()
                .map(|d| d.len())
                .ok_or_else(|| Error::Internal(format!("LFE word {w} is not differentiable")))?;
            row.min_d_len = Some(row.min_d_len.map_or(d, |x| x.min(d)));
        }
        for w in frontier.words() {
            let h = height(w, None)?;
            row.smooth_ht_min = Some(row.smooth_ht_min.map_or(h, |x| x.min(h)));
            row.smooth_ht_max = Some(row.smooth_ht_max.map_or(h, |x| x.max(h)));
        }
        rows.push(row);
    }
    let lf: Vec<u64> = rows.iter().map(|r| r.lf_count).collect();
    for (row, g) in rows.iter_mut().zip(gamma_from_lf(&lf)) {
        row.gamma = g;
    }
    Ok(ComplexityTable {
        alphabet,
        method: TableMethod::Frontier,
        rows,
    })
}

/// Complexity table for `n = 1..=n_max` from the LFE expansion tree. Reaches far larger `n` than
/// the frontier; it agrees with [`gamma_table`] wherever both are computed.
pub fn gamma_table_tree(alphabet: Alphabet, n_max: usize) -> ComplexityTable {
    let stats = lfe_tree_stats(alphabet, n_max);
    let mut rows: Vec<ComplexityRow> = (1..=n_max)
        .map(|n| {
            let s = &stats[n];
            ComplexityRow {
                n,
                gamma: 0,
                lf_count: s.count,
                ht_min: s.min_height,
                ht_max: s.max_height,
                min_b_ratio: s.min_b_ratio,
                min_a_ratio: s.min_a_ratio,
                min_d_len: s.min_d_len,
                smooth_ht_min: None,
                smooth_ht_max: None,
            }
        })
        .collect();
    let lf: Vec<u64> = rows.iter().map(|r| r.lf_count).collect();
    for (row, g) in rows.iter_mut().zip(gamma_from_lf(&lf)) {
        row.gamma = g;
    }
    ComplexityTable {
        alphabet,
        method: TableMethod::Tree,
        rows,
    }
}

/// Number of smooth words of length `n`, counted directly.
pub fn gamma_bruteforce(alphabet: Alphabet, n: usize, max_states: u64) -> Result<u64> {
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    frontier.advance_to(n, None)?;
    Ok(frontier.words().len() as u64)
}

/// `γ(0..=n_max)` counted directly.
pub fn gamma_bruteforce_series(
    alphabet: Alphabet,
    n_max: usize,
    max_states: u64,
) -> Result<Vec<u64>> {
    let mut frontier = SmoothFrontier::new(alphabet, max_states);
    let mut out = vec![1];
    for _ in 1..=n_max {
        frontier.advance(None)?;
        out.push(frontier.words().len() as u64);
    }
    Ok(out)
}

/// `2 + Σ_{j=1}^{k} 4(b-1)(2b-1)^{j-1}` and `2(2b-1)^k`, computed exactly.
pub fn level_partial_sum(b: u32, k: u32) -> (u128, u128) {
    let b = b as u128;
    let sum = 2
        + (1..=k)
            .map(|j| 4 * (b - 1) * (2 * b - 1).pow(j - 1))
            .sum::<u128>();
    (sum, 2 * (2 * b - 1).pow(k))
}
