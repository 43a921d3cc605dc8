use std::collections::HashMap;

use thiserror::Error;

use super::spec::{GameSpec, Player};
use super::strategy::{Strategy, StrategyError, View};
use super::transcript::{judge, picked_set, Round, Terminal, Transcript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefereeError {
    #[error("strategy for Player {expected} is owned by Player {found}")]
    Owner { expected: Player, found: Player },
    #[error("illegal move by Player {offender} at inning {inning}: {detail}")]
    Illegal {
        offender: Player,
        inning: usize,
        detail: String,
        history: Vec<Round>,
    },
    #[error("Player {player} strategy failed at inning {inning}: {source}")]
    Strategy {
        player: Player,
        inning: usize,
        source: StrategyError,
        history: Vec<Round>,
    },
}

impl RefereeError {
    /// The player at fault, if the error is a bad move or a broken strategy.
    pub fn offender(&self) -> Option<Player> {
        match self {
            RefereeError::Illegal { offender, .. } => Some(*offender),
            RefereeError::Strategy { player, .. } => Some(*player),
            RefereeError::Owner { .. } => None,
        }
    }
}

/// Plays `s_i` against `s_ii` until a player is stuck, the state
/// `(accumulated set, I's key, II's key)` repeats, or `horizon` innings pass.
pub fn referee(
    spec: &GameSpec,
    s_i: &Strategy,
    s_ii: &Strategy,
    horizon: usize,
) -> Result<Transcript, RefereeError> {
    for (s, expected) in [(s_i, Player::I), (s_ii, Player::II)] {
        if s.owner() != expected {
            return Err(RefereeError::Owner { expected, found: s.owner() });
        }
    }
    let mut rounds: Vec<Round> = Vec::new();
    let mut seen = HashMap::new();
    let finish = |rounds: Vec<Round>, terminal: Terminal, cycle_start: Option<usize>| {
        let winner = judge(spec, &rounds, terminal, cycle_start);
        Transcript { moves: rounds, terminal, cycle_start, winner }
    };
    for inning in 0..horizon {
        let view = View { spec, history: &rounds };
        let picked = picked_set(&rounds);
        let state = (picked, s_i.state_key(&view), s_ii.state_key(&view));
        if let Some(&start) = seen.get(&state) {
            return Ok(finish(rounds, Terminal::Stabilized, Some(start)));
        }
        seen.insert(state, inning);

        if spec.moves().is_empty() {
            return Ok(finish(rounds, Terminal::StuckI, None));
        }
        let offer = s_i.offer(&view).map_err(|source| RefereeError::Strategy {
            player: Player::I,
            inning,
            source,
            history: rounds.clone(),
        })?;
        if !spec.is_move(offer) {
            return Err(RefereeError::Illegal {
                offender: Player::I,
                inning,
                detail: format!("{offer} is not in {}", spec.selector()),
                history: rounds.clone(),
            });
        }
        let legal = spec.legal_picks(offer, picked);
        if legal.is_empty() {
            rounds.push(Round { offer, b: None });
            return Ok(finish(rounds, Terminal::StuckII, None));
        }
        let b = s_ii.pick(&view, offer).map_err(|source| RefereeError::Strategy {
            player: Player::II,
            inning,
            source,
            history: rounds.clone(),
        })?;
        if !legal.contains(b) {
            let detail = if offer.contains(b) {
                format!("{b} was already picked")
            } else {
                format!("{b} is not in {offer}")
            };
            return Err(RefereeError::Illegal {
                offender: Player::II,
                inning,
                detail,
                history: rounds.clone(),
            });
        }
        rounds.push(Round { offer, b: Some(b) });
    }
    Ok(finish(rounds, Terminal::Horizon, None))
}
