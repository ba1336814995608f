//! Error types shared across the crate.
//!
//! Contract violations that indicate programmer error (mixing elements over
//! different alphabets, indexing a letter past the alphabet) panic instead;
//! everything reachable from user input or runtime budgets is a `Result`.

use thiserror::Error;

/// Errors raised while reading an automaton definition file.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: output row is not a permutation of the alphabet")]
    NotAPermutation { line: usize },
    #[error("line {line}: unknown letter symbol `{symbol}`")]
    UnknownLetter { line: usize, symbol: String },
    #[error("line {line}: section references undeclared state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("line {line}: state name `1` is reserved for the identity")]
    ReservedName { line: usize },
    #[error("line {line}: state `{name}` declared twice")]
    DuplicateState { line: usize, name: String },
    #[error("missing `alphabet:` header")]
    MissingAlphabet,
    #[error("alphabet must contain at least two distinct symbols")]
    AlphabetTooSmall,
    #[error("word contains symbol `{symbol}` not in the alphabet")]
    BadWordSymbol { symbol: String },
}

/// Errors from the activity-growth routines.
#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("growth horizon n={n} too large for alphabet size {d} (d^n must fit in u64)")]
    HorizonTooLarge { n: usize, d: usize },
}

/// Errors from mother-group construction.
#[derive(Debug, Error)]
pub enum MotherError {
    #[error("alphabet size {d} too large for full enumeration (max {max}); use a generating subset")]
    AlphabetTooLarge { d: usize, max: usize },
}

/// Errors from the embedding pipeline.
#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("generator `{name}` has {class} activity; only finitary or bounded generators embed")]
    UnboundedGenerator { name: String, class: String },
    #[error("no generators supplied")]
    NoGenerators,
    #[error("cycle is not a single transitive cycle on the alphabet")]
    NotTransitive,
    #[error("embedding self-check failed: {0}")]
    Verification(String),
}

/// Errors from measures and random-walk experiments.
#[derive(Debug, Error)]
pub enum WalkError {
    #[error("measure support is empty")]
    EmptySupport,
    #[error("measure is not a probability measure (mass {mass})")]
    NotProbability { mass: String },
    #[error("measure is not symmetric; the collision estimator needs reflect(m) = m")]
    Asymmetric,
    #[error("sample count must be positive")]
    NoSamples,
}
