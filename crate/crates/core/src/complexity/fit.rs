//! Log-log least squares for growth exponents.

use serde::Serialize;

use super::ComplexityTable;
use crate::error::{Error, Result};

const MIN_POINTS: usize = 8;
const FIT_START: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub n_lo: usize,
    pub n_hi: usize,
    pub points: usize,
}

/// Unweighted fit of `log γ(n)` against `log n` over `n_lo <= n <= n_hi`.
pub fn fit_window(table: &ComplexityTable, n_lo: usize, n_hi: usize) -> Result<FitResult> {
    let n_lo = n_lo.max(1);
    if n_hi > table.n_max() || n_lo > n_hi {
        return Err(Error::InsufficientData(format!(
            "window [{n_lo}, {n_hi}] outside table of {} rows",
            table.n_max()
        )));
    }
    let pts: Vec<(f64, f64)> = (n_lo..=n_hi)
        .map(|n| {
            (
                (n as f64).ln(),
                (table.gamma(n).expect("row in range") as f64).ln(),
            )
        })
        .collect();
    if pts.len() < MIN_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} points, need at least {MIN_POINTS}",
            pts.len()
        )));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(FitResult {
        slope,
        intercept,
        r2,
        n_lo,
        n_hi,
        points: pts.len(),
    })
}

/// Fit over the largest dyadic window `[8, 2^⌊log₂ n_max⌋]`.
pub fn fit_exponent(table: &ComplexityTable) -> Result<FitResult> {
    let n_max = table.n_max();
    if n_max < FIT_START {
        return Err(Error::InsufficientData(format!("table has {n_max} rows")));
    }
    let hi = 1usize << (usize::BITS - 1 - n_max.leading_zeros());
    fit_window(table, FIT_START, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{ComplexityRow, TableMethod};
    use crate::word::Alphabet;

    fn power_table(n_max: usize, exp: f64) -> ComplexityTable {
        let rows = (1..=n_max)
            .map(|n| ComplexityRow {
                n,
                gamma: (3.0 * (n as f64).powf(exp)).round() as u64,
                lf_count: 0,
                ht_min: None,
                ht_max: None,
                min_b_ratio: None,
                min_a_ratio: None,
                min_d_len: None,
                smooth_ht_min: None,
                smooth_ht_max: None,
            })
            .collect();
        ComplexityTable {
            alphabet: Alphabet::new(2, 4).unwrap(),
            method: TableMethod::Tree,
            rows,
        }
    }

    #[test]
    fn recovers_power_law() {
        let f = fit_exponent(&power_table(300, 2.5)).unwrap();
        assert_eq!((f.n_lo, f.n_hi), (8, 256));
        assert!((f.slope - 2.5).abs() < 1e-3);
        assert!(f.r2 > 0.9999);
    }

    #[test]
    fn insufficient_data() {
        assert!(fit_exponent(&power_table(7, 2.0)).is_err());
        assert!(fit_exponent(&power_table(14, 2.0)).is_err());
        assert!(fit_exponent(&power_table(15, 2.0)).is_err());
        assert!(fit_exponent(&power_table(16, 2.0)).is_ok());
        assert!(fit_window(&power_table(20, 2.0), 10, 30).is_err());
    }
}
