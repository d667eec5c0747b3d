//! Exact independence ratios of integer distance graphs.
//!
//! For a finite set `S` of positive integers, `G(S)` is the graph on `ℤ`
//! joining `x` and `y` whenever `|x - y| ∈ S`. This crate computes the
//! independence ratio `ᾱ(S)` (the largest density of an independent set) by
//! two independent routes:
//!
//! * [`search`] — incremental branch and bound on intervals and circulants,
//!   giving a certified lower bound `α(ℤₙ)/n` and upper bound `α([m])/m`;
//! * [`stategraph`] — extremal mean cycles in a finite digraph of window
//!   patterns, giving the exact value together with a periodic witness.
//!
//! The same state-graph machinery answers minimum-density questions for
//! dominating sets and identifying codes and finds periodic colorings.
//! [`registry`] holds the known closed forms and checks them against the
//! engines.
//!
//! The crate is `no_std` (it needs `alloc`). Wall-clock limits are supplied
//! by the caller through [`Interrupt`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod blocks;
mod distance;
mod engine;
mod error;
mod rational;

pub mod registry;
pub mod search;
pub mod stategraph;

pub use blocks::{
    block_density, expand_blocks, parse_block_notation, verify_periodic_independent, BlockList, BlockStructure, Term,
    Verdict, DEFAULT_EXPANSION_CAP,
};
pub use distance::{normalize, power_distance_set, DistanceSet, NormalizedSet};
pub use engine::{compute, Budget, Interrupt, Method, MethodUsed, RatioReport, Status};
pub use error::{Error, ParseError};
pub use rational::Rational;
