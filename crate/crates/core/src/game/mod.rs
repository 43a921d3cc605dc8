//! Game specifications, plays, strategies, the referee and exhaustive
//! strategy verification.

mod referee;
mod spec;
mod strategy;
mod transcript;
mod verify;

pub use referee::{referee, RefereeError};
pub use spec::{GameError, GameSpec, Mode, Outcome, Player};
pub use strategy::{
    state_hash, Body, Move, MoveValue, PositionEntry, Strategy, StrategyError, StrategyFile, View,
};
pub use transcript::{outcome_set, outcome_winner, picked_set, Round, Terminal, Transcript};
pub(crate) use transcript::judge;
pub use verify::{verify_strategy, VerifyFailure, VerifyReport, NODE_LIMIT};
