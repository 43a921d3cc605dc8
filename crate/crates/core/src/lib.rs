//! Selection principles and topological games at a point.
//!
//! The crate decides one-selection principles and solves the matching games
//! exactly on finite spaces, turns constructive arguments into strategy
//! combinators that are checked by exhaustive play, and simulates the
//! uncountable-ordinal example symbolically.

pub mod topology;
pub mod ordinal;
pub mod game;
pub mod solver;
pub mod principles;
pub mod transformers;
pub mod harness;
