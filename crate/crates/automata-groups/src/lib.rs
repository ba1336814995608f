//! Computing with groups generated by finite automata acting on rooted trees.
//!
//! The crate provides:
//!
//! - exact algebra of automatic tree automorphisms: composition, inversion,
//!   wreath decomposition, canonical forms, and a decidable word problem
//!   ([`element`]);
//! - a line-oriented definition file format for automata ([`parse`]);
//! - activity-growth classification into finitary / bounded / polynomial /
//!   exponential, with depths and directed periods ([`classify`]);
//! - mother-group generators, generalized permutation matrices, and an
//!   executable embedding of bounded-automata groups into the mother group
//!   over a power alphabet ([`mother`], [`matrix`], [`embed`]);
//! - exact finitely supported measures, convolution, entropy profiles, the
//!   random walk with internal degrees of freedom, Monte Carlo return
//!   probabilities, and an entropy-inequality oracle suite ([`measure`],
//!   [`walks`], [`switchdist`], [`checks`]).
//!
//! The `examples/` directory contains one runnable walkthrough per
//! capability; the `automata-groups` binary exposes the same functionality as
//! subcommands.

pub mod alphabet;
pub mod checks;
pub mod classify;
pub mod element;
pub mod embed;
pub mod error;
pub mod machine;
pub mod matrix;
pub mod measure;
pub mod mother;
pub mod parse;
pub mod perm;
pub mod report;
mod store;
pub mod switchdist;
pub mod walks;

#[cfg(test)]
pub(crate) mod testutil;

pub use alphabet::{Alphabet, Letter, Word};
pub use element::{Decomposition, Element};
pub use machine::{MealyMachine, StateId};
pub use parse::{parse_machine, render_machines, ParsedMachine};
pub use perm::Perm;
