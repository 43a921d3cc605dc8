use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{minimal_sets, FamilyError, FamilyId, FiniteSpace, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

/// What Player II is trying to land in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The set of picked points must belong to the family.
    Family(FamilyId),
    /// The sequence of picks must not accumulate at the point.
    NotAccumulating(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Set,
    Sequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("point {point} is outside a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("injective play is only defined for set outcomes")]
    InjectiveSequence,
    #[error("unknown game `{0}`")]
    UnknownGame(String),
}

/// A one-selection game on a finite space. Member lists and the outcome
/// table are computed once at construction.
#[derive(Clone)]
pub struct GameSpec {
    space: Arc<FiniteSpace>,
    selector: FamilyId,
    outcome: Outcome,
    injective: bool,
    name: String,
    moves: Arc<Vec<PointSet>>,
    minimal_moves: Arc<Vec<PointSet>>,
    /// Indexed by mask; only used in set mode.
    in_outcome: Arc<Vec<bool>>,
}

impl fmt::Debug for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameSpec")
            .field("name", &self.name)
            .field("selector", &self.selector)
            .field("outcome", &self.outcome)
            .field("injective", &self.injective)
            .finish()
    }
}

impl GameSpec {
    pub fn new(
        space: FiniteSpace,
        selector: FamilyId,
        outcome: Outcome,
        injective: bool,
    ) -> Result<Self, GameError> {
        let selector = selector.checked(&space)?;
        let outcome = match outcome {
            Outcome::Family(f) => Outcome::Family(f.checked(&space)?),
            Outcome::NotAccumulating(x) if x >= space.n() => {
                return Err(GameError::PointOutOfRange { point: x, n: space.n() })
            }
            o @ Outcome::NotAccumulating(_) => o,
        };
        if injective && matches!(outcome, Outcome::NotAccumulating(_)) {
            return Err(GameError::InjectiveSequence);
        }
        let moves: Vec<PointSet> = selector
            .members(&space)
            .into_iter()
            .filter(|a| !a.is_empty())
            .collect();
        let minimal_moves = minimal_sets(&moves);
        let in_outcome = match &outcome {
            Outcome::Family(f) => PointSet::all_subsets(space.n())
                .map(|s| f.contains(&space, s))
                .collect(),
            Outcome::NotAccumulating(_) => Vec::new(),
        };
        let name = format!(
            "G1{}({}, {})",
            if injective { "*" } else { "" },
            selector,
            match &outcome {
                Outcome::Family(f) => f.to_string(),
                Outcome::NotAccumulating(x) => format!("notacc:{x}"),
            }
        );
        Ok(GameSpec {
            space: Arc::new(space),
            selector,
            outcome,
            injective,
            name,
            moves: Arc::new(moves),
            minimal_moves: Arc::new(minimal_moves),
            in_outcome: Arc::new(in_outcome),
        })
    }

    /// `G₁*(τ_x, CD)`.
    pub fn q_game(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::TauX(x), Outcome::Family(FamilyId::CD), true)
    }

    /// The neighbourhood-point game `G₁(τ_x, ·)` with II aiming at sets that
    /// fail to converge to `x` once `x` itself is dropped.
    pub fn w_game(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::TauX(x), Outcome::Family(FamilyId::NotConverging(x)), false)
    }

    /// `G₁(τ_x, ¬Γ_x)` with the complement taken literally.
    pub fn w_game_literal(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::TauX(x), Outcome::Family(FamilyId::NotGamma(x)), false)
    }

    /// `(G₁)(τ*, ¬L_x)`.
    pub fn wtilde_game(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::TauStar, Outcome::NotAccumulating(x), false)
    }

    /// `G₁(Ω_x, ⋃_p Ω_p)`.
    pub fn dual_game(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::OmegaX(x), Outcome::Family(FamilyId::UnionOmega), false)
    }

    /// `G₁(Ω_x, Ω_x)`.
    pub fn csft_game(space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        Self::new(space, FamilyId::OmegaX(x), Outcome::Family(FamilyId::OmegaX(x)), false)
    }

    /// Builds a named game: `qgame`, `wgame`, `wgame-literal`, `wtilde`,
    /// `dual`, `csft`.
    pub fn named(kind: &str, space: FiniteSpace, x: usize) -> Result<Self, GameError> {
        match kind.to_ascii_lowercase().as_str() {
            "qgame" | "q" => Self::q_game(space, x),
            "wgame" | "w" => Self::w_game(space, x),
            "wgame-literal" => Self::w_game_literal(space, x),
            "wtilde" | "wtilde-game" => Self::wtilde_game(space, x),
            "dual" | "dual-game" => Self::dual_game(space, x),
            "csft" | "csft-game" => Self::csft_game(space, x),
            _ => Err(GameError::UnknownGame(kind.to_string())),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn selector(&self) -> &FamilyId {
        &self.selector
    }

    pub fn outcome(&self) -> &Outcome {
        &self.outcome
    }

    pub fn injective(&self) -> bool {
        self.injective
    }

    pub fn mode(&self) -> Mode {
        match self.outcome {
            Outcome::Family(_) => Mode::Set,
            Outcome::NotAccumulating(_) => Mode::Sequence,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Every legal move for Player I, in mask order.
    pub fn moves(&self) -> &[PointSet] {
        &self.moves
    }

    pub fn minimal_moves(&self) -> &[PointSet] {
        &self.minimal_moves
    }

    pub fn is_move(&self, a: PointSet) -> bool {
        self.moves.binary_search(&a).is_ok()
    }

    /// Set mode: does the accumulated set satisfy Player II's goal?
    pub fn in_outcome(&self, s: PointSet) -> bool {
        self.in_outcome
            .get(s.bits() as usize)
            .copied()
            .unwrap_or(false)
    }

    /// Sequence mode: the picks that count as visits to the point. On a
    /// finite space a sequence accumulates at `x` iff it lands in the
    /// minimal neighbourhood of `x` infinitely often.
    pub fn target(&self) -> Option<PointSet> {
        match self.outcome {
            Outcome::NotAccumulating(x) => Some(self.space.min_nbhd(x)),
            Outcome::Family(_) => None,
        }
    }

    /// Legal picks from `offer` given the points picked so far.
    pub fn legal_picks(&self, offer: PointSet, picked: PointSet) -> PointSet {
        if self.injective {
            offer.difference(picked)
        } else {
            offer
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete, sierpinski};

    #[test]
    fn named_games_build() {
        let s = sierpinski();
        let q = GameSpec::q_game(s.clone(), 0).unwrap();
        assert!(q.injective());
        assert_eq!(q.moves(), &[PointSet::from_points([0, 1])]);
        assert!(q.in_outcome(PointSet::singleton(0)));
        assert!(!q.in_outcome(PointSet::from_points([0, 1])));
        let w = GameSpec::wtilde_game(s.clone(), 0).unwrap();
        assert_eq!(w.mode(), Mode::Sequence);
        assert_eq!(w.target(), Some(PointSet::from_points([0, 1])));
        assert!(GameSpec::named("nope", s, 0).is_err());
    }

    #[test]
    fn empty_members_are_dropped() {
        let d = discrete(2).unwrap();
        let g = GameSpec::dual_game(d, 0).unwrap();
        assert!(g.moves().is_empty());
    }

    #[test]
    fn point_range_is_checked() {
        assert!(GameSpec::q_game(sierpinski(), 4).is_err());
        assert!(GameSpec::wtilde_game(sierpinski(), 2).is_err());
    }
}
