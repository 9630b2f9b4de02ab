//! Constants and checks specific to even alphabets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::derivative;
use crate::word::{Alphabet, Word};

const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvenAlphabetConstants {
    pub alphabet: Alphabet,
    /// `(a + b) / 2`
    pub rho_half: f64,
    pub q1: f64,
    pub q2: f64,
    pub t1: f64,
    pub t2: f64,
    pub tau: f64,
}

fn require_even(alphabet: Alphabet) -> Result<()> {
    if alphabet.is_even() {
        Ok(())
    } else {
        Err(Error::NotEvenAlphabet {
            a: alphabet.a(),
            b: alphabet.b(),
        })
    }
}

pub fn even_constants(alphabet: Alphabet) -> Result<EvenAlphabetConstants> {
    require_even(alphabet)?;
    let b = alphabet.b() as f64;
    let rho = (alphabet.a() + alphabet.b()) as f64 / 2.0;
    let tau = b * (rho - 2.0) / (rho - 1.0);
    Ok(EvenAlphabetConstants {
        alphabet,
        rho_half: rho,
        q1: (rho - 1.0) * b + 2.0 * (b - 1.0),
        q2: (rho - 1.0) * b,
        t1: -(3.0 * b - 2.0 + 2.0 * (b - 1.0) / (rho - 1.0)).ln() / rho.ln(),
        t2: 2.0 - tau.ln() / rho.ln(),
        tau,
    })
}

/// Extremes of `t₁`, `t₂` over every even pair with `b <= b_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenRanges {
    pub b_max: u32,
    pub pairs: usize,
    pub t1_min: f64,
    pub t1_max: f64,
    pub t2_min: f64,
    pub t2_max: f64,
    pub t2_argmin: Alphabet,
    pub t1_lower: f64,
    pub t2_lower: f64,
    pub t2_upper: f64,
    /// Pairs whose constants fall outside `[t1_lower, -1)` or `[t2_lower, t2_upper]`.
    pub out_of_range: Vec<Alphabet>,
}

impl EvenRanges {
    pub fn ok(&self) -> bool {
        self.out_of_range.is_empty()
    }
}

pub fn even_ranges(b_max: u32) -> Result<EvenRanges> {
    let t1_lower = -(13f64.ln() / 3f64.ln());
    let t2_lower = 2.0 - 20f64.ln() / 12f64.ln();
    let t2_upper = 2.0 - 2f64.ln() / 3f64.ln();
    let mut r = EvenRanges {
        b_max,
        pairs: 0,
        t1_min: f64::INFINITY,
        t1_max: f64::NEG_INFINITY,
        t2_min: f64::INFINITY,
        t2_max: f64::NEG_INFINITY,
        t2_argmin: Alphabet::new(2, 4)?,
        t1_lower,
        t2_lower,
        t2_upper,
        out_of_range: Vec::new(),
    };
    for b in (4..=b_max).step_by(2) {
        for a in (2..b).step_by(2) {
            let s = Alphabet::new(a, b)?;
            let c = even_constants(s)?;
            r.pairs += 1;
            r.t1_min = r.t1_min.min(c.t1);
            r.t1_max = r.t1_max.max(c.t1);
            r.t2_max = r.t2_max.max(c.t2);
            if c.t2 < r.t2_min {
                r.t2_min = c.t2;
                r.t2_argmin = s;
            }
            let t1_ok = c.t1 >= t1_lower - RANGE_TOL && c.t1 < -1.0 + RANGE_TOL;
            let t2_ok = c.t2 >= t2_lower - RANGE_TOL && c.t2 <= t2_upper + RANGE_TOL;
            if !(t1_ok && t2_ok) {
                r.out_of_range.push(s);
            }
        }
    }
    if r.pairs == 0 {
        return Err(Error::EmptyRange(format!(
            "no even pairs with b <= {b_max}"
        )));
    }
    Ok(r)
}

/// Letter counts and derivative length behind [`balance_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BalanceDetails {
    pub len: usize,
    pub count_a: usize,
    pub count_b: usize,
    pub d_len: usize,
    pub balanced: bool,
    pub length_sandwich: bool,
}

pub fn balance_details(w: &Word) -> Result<BalanceDetails> {
    let s = w.alphabet();
    require_even(s)?;
    let d = derivative(w)
        .into_word()
        .ok_or(Error::NotTwiceDifferentiable)?;
    if !derivative(&d).is_ok() {
        return Err(Error::NotTwiceDifferentiable);
    }
    let (a, b) = (s.a() as i64, s.b() as i64);
    // for even alphabets every constant is an integer
    let rho = (a + b) / 2;
    let q1 = (rho - 1) * b + 2 * (b - 1);
    let q2 = (rho - 1) * b;
    let (n, ca, cb, dl) = (
        w.len() as i64,
        w.count_a() as i64,
        w.count_b() as i64,
        d.len() as i64,
    );
    Ok(BalanceDetails {
        len: w.len(),
        count_a: w.count_a(),
        count_b: w.count_b(),
        d_len: d.len(),
        balanced: (ca - cb).abs() <= b,
        length_sandwich: rho * dl - q2 <= n && n <= rho * dl + q1,
    })
}

/// `||w|_a - |w|_b| <= b` and `ρ|D(w)| - q₂ <= |w| <= ρ|D(w)| + q₁` for a twice
/// differentiable word over an even alphabet.
pub fn balance_check(w: &Word) -> Result<bool> {
    let d = balance_details(w)?;
    Ok(d.balanced && d.length_sandwich)
}

/// `log(2b - 1) / log((a + b) / 2)`
pub fn even_exponent(alphabet: Alphabet) -> Result<f64> {
    require_even(alphabet)?;
    let rho = (alphabet.a() + alphabet.b()) as f64 / 2.0;
    Ok((2.0 * alphabet.b() as f64 - 1.0).ln() / rho.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfe::SmoothFrontier;
    use crate::word::Run;

    fn ab(a: u32, b: u32) -> Alphabet {
        Alphabet::new(a, b).unwrap()
    }

    #[test]
    fn constants_examples() {
        let c = even_constants(ab(2, 4)).unwrap();
        assert_eq!(c.rho_half, 3.0);
        assert!((c.t1 + 13f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!((c.t1 + 2.3347).abs() < 1e-4);
        assert_eq!(c.tau, 2.0);
        assert!(even_constants(ab(10, 12)).unwrap().t2 <= 2.0 - 2f64.ln() / 3f64.ln() + 1e-9);
        assert!(even_constants(ab(1, 2)).is_err());
        assert!(even_constants(ab(2, 5)).is_err());
    }

    #[test]
    fn ranges_up_to_58() {
        let r = even_ranges(58).unwrap();
        assert!(r.ok(), "{:?}", r.out_of_range);
        assert!((r.t2_min - (2.0 - 20f64.ln() / 12f64.ln())).abs() < 1e-9);
        assert!((r.t2_min - 0.7944).abs() < 1e-4);
        assert_eq!(r.t2_argmin, ab(2, 22));
    }

    #[test]
    fn exponent_values() {
        assert!((even_exponent(ab(2, 4)).unwrap() - 1.7712).abs() < 1e-4);
        assert!((even_exponent(ab(2, 6)).unwrap() - 1.7297).abs() < 1e-4);
        assert!(even_exponent(ab(1, 2)).is_err());
    }

    #[test]
    fn smooth_words_are_balanced() {
        for s in [ab(2, 4), ab(2, 6), ab(4, 6)] {
            let mut f = SmoothFrontier::new(s, 5_000_000);
            for n in 1..=22 {
                f.advance(None).unwrap();
                for w in f.words() {
                    match balance_details(w) {
                        Ok(d) => {
                            assert!(d.balanced && d.length_sandwich, "{s} {w} {d:?}");
                            // 1/2 - b/2n <= |w|_b/n <= 1/2 + b/2n, cleared of denominators
                            let (cb, b) = (2 * d.count_b, s.b() as usize);
                            assert!(cb + b >= n && cb <= n + b);
                        }
                        Err(e) => assert_eq!(e, Error::NotTwiceDifferentiable),
                    }
                }
            }
        }
    }

    #[test]
    fn short_words() {
        let s = ab(2, 4);
        let w = Word::from_runs(s, [Run::new(2, 3)]).unwrap();
        assert!(balance_check(&w).unwrap());
        assert!(balance_check(&Word::empty(s)).unwrap());
    }
}
