//! Symbolic ordinal intervals `[0, λ]` for `λ ∈ {ω, ω₁}` with the order
//! topology, and bounded simulation of the ω₁+1 example.

mod omega1_game;
mod number;
mod space;

pub use omega1_game::{
    check_prefix, omega1_counter_ii, omega1_strategy_i, random_pick, simulate_omega1,
    OrdinalMove, OrdinalTranscript, PrefixReport, DEFAULT_HORIZON,
};
pub use number::{ord_compare, ord_succ, ord_sup, Ordinal, OrdinalParseError};
pub use space::{Interval, NbhdBasis, OrdinalError, OrdinalSpace};
