//! Smooth (C∞) words over two-letter integer alphabets.
//!
//! A word over `{a, b}` is *differentiable* when its interior runs have length
//! `a` or `b` and no run is longer than `b`; its derivative is the word of run
//! lengths, with a boundary run shorter than `b` dropped. A word is *smooth*
//! when iterating derivative-after-closure reaches the empty word.
//!
//! Modules:
//! - [`word`]: alphabets and the run-length word representation
//! - [`operators`]: closure, derivative, `rho`, inverse derivative, primitives
//! - [`smooth`]: smoothness, heights, left extensions, LFE test
//! - [`lfe`]: enumeration of LFE words by level and by length
//! - [`complexity`]: subword complexity, frequency estimates and bound checks
//! - [`kolakoski`]: the self-run-length-encoding sequence
//! - [`verify`]: property sweeps behind `verify-all` and the acceptance suite
//! - [`cli`]: command implementations behind the `smoothwords` binary

pub mod cli;
pub mod complexity;
pub mod error;
pub mod kolakoski;
pub mod lfe;
pub mod operators;
pub mod smooth;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use operators::{
    closure, derivative, generic_run_length_derivative, inverse_derivative, primitives, rho,
    DerivativeOutcome, NotDifferentiable,
};
pub use smooth::{height, is_lfe, is_smooth, left_extensions, SmoothCache};
pub use word::{Alphabet, Run, RunProfile, Word};
