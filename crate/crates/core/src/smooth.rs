//! Smoothness, heights and left extensions.
//!
//! Smoothness follows the `rho` chain (`D` after closure); height follows the
//! plain `D` chain. Both chains are exposed for inspection.

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{derivative, rho, DerivativeOutcome, NotDifferentiable};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheEntry {
    pub smooth: bool,
    pub height: Option<u32>,
}

/// Memo table keyed by canonical word. Safe to share between threads; entries are written once.
#[derive(Debug, Default)]
pub struct SmoothCache {
    map: DashMap<Word, CacheEntry>,
}

impl SmoothCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, w: &Word) -> Option<CacheEntry> {
        self.map.get(w).map(|e| *e)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn record_smooth(&self, w: Word, smooth: bool) {
        self.map.entry(w).or_insert(CacheEntry {
            smooth,
            height: None,
        });
    }

    fn record_height(&self, w: &Word, height: u32) {
        if let Some(mut e) = self.map.get_mut(w) {
            if e.height.is_none() {
                e.height = Some(height);
            }
        }
    }
}

/// Sequence of iterates, ending either at `ε` or at a word with no derivative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub words: Vec<Word>,
    pub failure: Option<NotDifferentiable>,
}

impl Chain {
    /// Whether the chain reached the empty word.
    pub fn reaches_empty(&self) -> bool {
        self.failure.is_none()
    }
}

fn chain_with(w: &Word, step: fn(&Word) -> DerivativeOutcome) -> Chain {
    let mut words = vec![w.clone()];
    let mut cur = w.clone();
    while !cur.is_empty() {
        match step(&cur) {
            DerivativeOutcome::Ok(next) => {
                // both operators strictly shorten nonempty words
                debug_assert!(next.len() < cur.len());
                words.push(next.clone());
                cur = next;
            }
            DerivativeOutcome::NotDifferentiable(reason) => {
                return Chain {
                    words,
                    failure: Some(reason),
                };
            }
        }
    }
    Chain {
        words,
        failure: None,
    }
}

/// `w, rho(w), rho²(w), …`
pub fn rho_chain(w: &Word) -> Chain {
    chain_with(w, rho)
}

/// `w, D(w), D²(w), …`
pub fn d_chain(w: &Word) -> Chain {
    chain_with(w, derivative)
}

/// Smoothness test with the termination guard surfaced as an error.
pub fn smoothness(w: &Word, cache: Option<&SmoothCache>) -> Result<bool> {
    let limit = 2 * w.alphabet().b() as usize;
    let mut visited: Vec<Word> = Vec::new();
    let mut cur = w.clone();
    let mut stalls = 0usize;
    let result = loop {
        if cur.is_empty() {
            break true;
        }
        if let Some(entry) = cache.and_then(|c| c.get(&cur)) {
            break entry.smooth;
        }
        let next = match rho(&cur) {
            DerivativeOutcome::Ok(next) => next,
            DerivativeOutcome::NotDifferentiable(_) => {
                if cache.is_some() {
                    visited.push(cur);
                }
                break false;
            }
        };
        if next.len() >= cur.len() {
            stalls += 1;
            if stalls > limit {
                return Err(Error::Internal(format!("rho failed to shorten {cur}")));
            }
        } else {
            stalls = 0;
        }
        if cache.is_some() {
            visited.push(std::mem::replace(&mut cur, next));
        } else {
            cur = next;
        }
    };
    if let Some(c) = cache {
        for v in visited {
            c.record_smooth(v, result);
        }
    }
    Ok(result)
}

/// Whether some iterate of `rho` is the empty word.
pub fn is_smooth(w: &Word, cache: Option<&SmoothCache>) -> bool {
    smoothness(w, cache).expect("rho strictly shortens nonempty words")
}

/// Smallest `k` with `D^{k+1}(w) = ε`.
pub fn height(w: &Word, cache: Option<&SmoothCache>) -> Result<u32> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(h) = cache.and_then(|c| c.get(w)).and_then(|e| e.height) {
        return Ok(h);
    }
    if !is_smooth(w, cache) {
        return Err(Error::NotSmooth);
    }
    let chain = d_chain(w);
    if let Some(reason) = chain.failure {
        return Err(Error::Internal(format!(
            "smooth word {w} has a non-differentiable D-iterate: {reason}"
        )));
    }
    // chain = [w, D(w), ..., ε]
    let h = (chain.words.len() - 2) as u32;
    if let Some(c) = cache {
        c.record_height(w, h);
    }
    Ok(h)
}

/// Number of `rho` applications needed to reach `ε`, minus one. Agrees with [`height`] when
/// `b = a + 1`.
pub fn rho_height(w: &Word) -> Result<u32> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let chain = rho_chain(w);
    if !chain.reaches_empty() {
        return Err(Error::NotSmooth);
    }
    Ok((chain.words.len() - 2) as u32)
}

/// Letters `x` with `x·w` smooth, in increasing order.
pub fn left_extensions(w: &Word, cache: Option<&SmoothCache>) -> Result<Vec<u32>> {
    if !is_smooth(w, cache) {
        return Err(Error::NotSmooth);
    }
    Ok(w.alphabet()
        .letters()
        .into_iter()
        .filter(|&x| is_smooth(&w.prepend(x, 1).expect("letter from alphabet"), cache))
        .collect())
}

/// Left fully extendable: both `a·w` and `b·w` are smooth.
pub fn is_lfe(w: &Word, cache: Option<&SmoothCache>) -> bool {
    w.alphabet()
        .letters()
        .into_iter()
        .all(|x| is_smooth(&w.prepend(x, 1).expect("letter from alphabet"), cache))
}
