//! Frequency estimate, height bounds and the growth sandwich.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::ComplexityTable;
use crate::error::{Error, Result};
use crate::word::Alphabet;

fn ser_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Margin added to the fitted `t₂` so the height bound is strict at the worst row.
const T2_MARGIN: f64 = 1e-9;

/// Empirical frequency bound over LFE words of length in `(n0, n_max]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiEstimate {
    #[serde(serialize_with = "ser_ratio")]
    pub xi: Ratio<u64>,
    /// Same minimum taken over `a`-frequencies; equal to `xi` because LFE words are closed under
    /// complement.
    #[serde(serialize_with = "ser_ratio")]
    pub xi_dual: Ratio<u64>,
    pub n0: usize,
    pub n_max: usize,
    /// Smallest `L` such that every LFE word with `L <= |w| <= n_max` has `|D(w)| >= n0`.
    /// `None` when no length in range qualifies.
    pub big_n0: Option<usize>,
}

impl XiEstimate {
    pub fn xi_f64(&self) -> f64 {
        self.xi.to_f64().expect("finite ratio")
    }

    pub fn complement_consistent(&self) -> bool {
        self.xi == self.xi_dual
    }
}

pub fn estimate_xi(table: &ComplexityTable, n0: usize, n_max: usize) -> Result<XiEstimate> {
    if n0 >= n_max {
        return Err(Error::EmptyRange(format!(
            "n0={n0} must be below n_max={n_max}"
        )));
    }
    if n_max > table.n_max() {
        return Err(Error::EmptyRange(format!(
            "n_max={n_max} exceeds the table horizon {}",
            table.n_max()
        )));
    }
    let rows = &table.rows[n0..n_max];
    let xi = rows.iter().filter_map(|r| r.min_b_ratio).min();
    let xi_dual = rows.iter().filter_map(|r| r.min_a_ratio).min();
    let (Some(xi), Some(xi_dual)) = (xi, xi_dual) else {
        return Err(Error::EmptyRange(format!(
            "no LFE words with {n0} < |u| <= {n_max}"
        )));
    };
    let mut big_n0 = None;
    for r in table.rows[..n_max].iter().rev() {
        match r.min_d_len {
            Some(d) if d < n0 => break,
            _ => big_n0 = Some(r.n),
        }
    }
    Ok(XiEstimate {
        xi,
        xi_dual,
        n0,
        n_max,
        big_n0,
    })
}

/// `(lower, upper)` growth exponents for a frequency bound `xi`.
pub fn growth_exponents(alphabet: Alphabet, xi: f64) -> Result<(f64, f64)> {
    if !(xi > 0.0 && xi < 0.5) {
        return Err(Error::XiOutOfRange { xi });
    }
    let (a, b) = (alphabet.a() as f64, alphabet.b() as f64);
    let num = (2.0 * b - 1.0).ln();
    let lower = num / (1.0 + (a + b - 2.0) * (1.0 - xi)).ln();
    let upper = num / (1.0 + (a + b - 2.0) * xi).ln();
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// One of `ht_min`, `ht_max`, `gamma_lower`, `gamma_upper`.
    pub kind: &'static str,
    pub n: usize,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub alphabet: Alphabet,
    pub estimate: XiEstimate,
    pub xi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub q: f64,
    pub m: f64,
    pub t1: f64,
    /// Fitted: the largest observed `ht_max(n) - log n / log(1/α)` plus a 1e-9 margin.
    pub t2: f64,
    pub t2_fitted: bool,
    pub exponent_lower: f64,
    pub exponent_upper: f64,
    pub c1: f64,
    pub c2: f64,
    pub violations: Vec<Violation>,
}

/// Constants and checks for the height bounds and the growth sandwich on the table's horizon.
pub fn growth_report(table: &ComplexityTable, n0: usize, n_max: usize) -> Result<BoundReport> {
    let estimate = estimate_xi(table, n0, n_max)?;
    let xi = estimate.xi_f64();
    let (exponent_lower, exponent_upper) = growth_exponents(table.alphabet, xi)?;
    let (a, b) = (table.alphabet.a() as f64, table.alphabet.b() as f64);
    let alpha = 1.0 / (1.0 + (a + b - 2.0) * xi);
    let beta = 1.0 + (a + b - 2.0) * (1.0 - xi);
    let q = 2.0 * (b - 1.0);
    let m = 2.0 * (b - 1.0) + q / (beta - 1.0);
    let t1 = -m.ln() / beta.ln();
    let t2 = table.rows[..n_max]
        .iter()
        .filter_map(|r| {
            r.ht_max
                .map(|h| h as f64 - (r.n as f64).ln() / (1.0 / alpha).ln())
        })
        .fold(f64::NEG_INFINITY, f64::max)
        + T2_MARGIN;
    let base = 2.0 * b - 1.0;
    let mut report = BoundReport {
        alphabet: table.alphabet,
        estimate,
        xi,
        alpha,
        beta,
        q,
        m,
        t1,
        t2,
        t2_fitted: true,
        exponent_lower,
        exponent_upper,
        c1: 2.0 * base.powf(t1 - 1.0),
        c2: 2.0 * base.powf(t2),
        violations: Vec::new(),
    };
    let mut violations = height_bounds_check(table, &report);
    violations.extend(growth_sandwich(table, &report));
    report.violations = violations;
    Ok(report)
}

/// `ht_min(n) > log n / log β + t₁` and `ht_max(n) < log n / log(1/α) + t₂` over rows up to the
/// report's `n_max`.
pub fn height_bounds_check(table: &ComplexityTable, report: &BoundReport) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in &table.rows[..report.estimate.n_max.min(table.n_max())] {
        let ln_n = (r.n as f64).ln();
        if let Some(h) = r.ht_min {
            let bound = ln_n / report.beta.ln() + report.t1;
            if (h as f64) <= bound {
                out.push(Violation {
                    kind: "ht_min",
                    n: r.n,
                    observed: h as f64,
                    bound,
                });
            }
        }
        if let Some(h) = r.ht_max {
            let bound = ln_n / (1.0 / report.alpha).ln() + report.t2;
            if (h as f64) >= bound {
                out.push(Violation {
                    kind: "ht_max",
                    n: r.n,
                    observed: h as f64,
                    bound,
                });
            }
        }
    }
    out
}

/// `c₁ n^lower <= γ(n) <= c₂ n^upper` for `n0 <= n <= n_max`.
pub fn growth_sandwich(table: &ComplexityTable, report: &BoundReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let (lo, hi) = (
        report.estimate.n0.max(1),
        report.estimate.n_max.min(table.n_max()),
    );
    for r in &table.rows[lo - 1..hi] {
        let n = r.n as f64;
        let g = r.gamma as f64;
        let lower = report.c1 * n.powf(report.exponent_lower);
        let upper = report.c2 * n.powf(report.exponent_upper);
        if g < lower {
            out.push(Violation {
                kind: "gamma_lower",
                n: r.n,
                observed: g,
                bound: lower,
            });
        }
        if g > upper {
            out.push(Violation {
                kind: "gamma_upper",
                n: r.n,
                observed: g,
                bound: upper,
            });
        }
    }
    out
}
