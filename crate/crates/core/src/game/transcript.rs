use std::fmt;

use serde::{Deserialize, Serialize};

use super::spec::{GameSpec, Mode, Player};
use crate::topology::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terminal {
    #[serde(rename = "horizon")]
    Horizon,
    #[serde(rename = "stuck-II")]
    StuckII,
    #[serde(rename = "stuck-I")]
    StuckI,
    #[serde(rename = "stabilized")]
    Stabilized,
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Terminal::Horizon => "horizon",
            Terminal::StuckII => "stuck-II",
            Terminal::StuckI => "stuck-I",
            Terminal::Stabilized => "stabilized",
        })
    }
}

/// One inning. `b` is missing only in a final inning where II was stuck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round {
    #[serde(rename = "A")]
    pub offer: PointSet,
    pub b: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub moves: Vec<Round>,
    pub terminal: Terminal,
    /// First inning of the repeating block of a stabilized play.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_start: Option<usize>,
    pub winner: Player,
}

impl Transcript {
    pub fn picks(&self) -> impl Iterator<Item = usize> + '_ {
        self.moves.iter().filter_map(|r| r.b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcripts serialize")
    }
}

/// Union of the picks of a list of innings.
pub fn picked_set(rounds: &[Round]) -> PointSet {
    rounds.iter().filter_map(|r| r.b).collect()
}

pub fn outcome_set(t: &Transcript) -> PointSet {
    picked_set(&t.moves)
}

/// Judges a finished play: Player II wins iff the outcome lies in the goal
/// family. A stuck Player I concedes. In sequence mode a stabilized play is
/// judged on its repeating block and a horizon play on its second half.
pub fn outcome_winner(spec: &GameSpec, t: &Transcript) -> Player {
    judge(spec, &t.moves, t.terminal, t.cycle_start)
}

pub(crate) fn judge(
    spec: &GameSpec,
    rounds: &[Round],
    terminal: Terminal,
    cycle_start: Option<usize>,
) -> Player {
    if terminal == Terminal::StuckI {
        return Player::II;
    }
    match spec.mode() {
        Mode::Set => {
            if spec.in_outcome(picked_set(rounds)) {
                Player::II
            } else {
                Player::I
            }
        }
        Mode::Sequence => {
            let target = spec.target().expect("sequence games have a target");
            let from = match (terminal, cycle_start) {
                (Terminal::Stabilized, Some(c)) => c,
                _ => rounds.len() / 2,
            };
            let visits = rounds[from.min(rounds.len())..]
                .iter()
                .filter_map(|r| r.b)
                .any(|b| target.contains(b));
            if visits {
                Player::I
            } else {
                Player::II
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete, sierpinski, FamilyId};
    use crate::game::spec::Outcome;

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    #[test]
    fn stuck_q_game_is_won_by_i() {
        let g = GameSpec::q_game(sierpinski(), 0).unwrap();
        let rounds = vec![
            Round { offer: ps(&[0, 1]), b: Some(0) },
            Round { offer: ps(&[0, 1]), b: Some(1) },
            Round { offer: ps(&[0, 1]), b: None },
        ];
        let t = Transcript {
            moves: rounds,
            terminal: Terminal::StuckII,
            cycle_start: None,
            winner: Player::I,
        };
        assert_eq!(outcome_set(&t), ps(&[0, 1]));
        assert_eq!(outcome_winner(&g, &t), Player::I);
    }

    #[test]
    fn stabilized_singleton_is_won_by_ii() {
        let d = discrete(2).unwrap();
        let g = GameSpec::new(
            d,
            FamilyId::Explicit(vec![ps(&[0])]),
            Outcome::Family(FamilyId::Explicit(vec![ps(&[0])])),
            false,
        )
        .unwrap();
        let r = Round { offer: ps(&[0]), b: Some(0) };
        let t = Transcript {
            moves: vec![r, r],
            terminal: Terminal::Stabilized,
            cycle_start: Some(1),
            winner: Player::II,
        };
        assert_eq!(outcome_winner(&g, &t), Player::II);
    }

    #[test]
    fn sequence_visits_in_cycle_favour_i() {
        let g = GameSpec::wtilde_game(sierpinski(), 1).unwrap();
        let hit = Round { offer: ps(&[0, 1]), b: Some(1) };
        let miss = Round { offer: ps(&[0, 1]), b: Some(0) };
        assert_eq!(judge(&g, &[miss, hit], Terminal::Stabilized, Some(1)), Player::I);
        assert_eq!(judge(&g, &[hit, miss], Terminal::Stabilized, Some(1)), Player::II);
    }

    #[test]
    fn json_shape() {
        let t = Transcript {
            moves: vec![Round { offer: ps(&[0, 1]), b: Some(0) }],
            terminal: Terminal::StuckII,
            cycle_start: None,
            winner: Player::I,
        };
        assert_eq!(t.to_json(), r#"{"moves":[{"A":[0,1],"b":0}],"terminal":"stuck-II","winner":"I"}"#);
        let back: Transcript = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
