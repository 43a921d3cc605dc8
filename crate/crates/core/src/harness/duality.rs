//! Agreement of the q-game with its dual over all small spaces.

use rayon::prelude::*;

use serde::Serialize;

use crate::game::{referee, GameSpec, Player, Terminal, Transcript};
use crate::solver::solve;
use crate::topology::FiniteSpace;
use crate::transformers::{dual_ii, dual_iv};

use super::{instances, HarnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Diagnosis {
    /// A player was stuck, so the finite stuck rule decided the play.
    StuckRuleArtifact,
    /// `Ω_x` is empty or too small for the argument.
    OmegaDegeneracy,
    Genuine,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityRow {
    pub space: String,
    pub x: usize,
    pub qgame: Player,
    pub dual: Player,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<Diagnosis>,
    /// The q-game winner against the dual winner's strategy carried over.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Transcript>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub rows: Vec<DualityRow>,
    pub agreements: usize,
}

impl DualityReport {
    pub fn percent(&self) -> f64 {
        if self.rows.is_empty() {
            100.0
        } else {
            100.0 * self.agreements as f64 / self.rows.len() as f64
        }
    }

    pub fn all_agree_or_diagnosed(&self) -> bool {
        self.rows.iter().all(|r| r.agree || r.diagnosis.is_some_and(|d| d != Diagnosis::Genuine))
    }
}

/// Both biconditionals at one point. Finite games are determined, so they
/// reduce to "the q-game and the dual game have opposite winners".
pub fn duality_row(space: &FiniteSpace, x: usize, name: &str) -> Result<DualityRow, HarnessError> {
    let q = GameSpec::q_game(space.clone(), x)?;
    let d = GameSpec::dual_game(space.clone(), x)?;
    let rq = solve(&q);
    let rd = solve(&d);
    let agree = rq.winner != rd.winner;
    let (diagnosis, transcript) = if agree {
        (None, None)
    } else {
        // the dual winner's strategy, carried over to the q-game, against
        // the q-game winner
        let carried = match rd.winner {
            Player::II => dual_iv(&d, rd.winning_strategy(), x),
            Player::I => dual_ii(&d, rd.winning_strategy(), x),
        };
        let t = carried.ok().and_then(|(_, c)| {
            let (si, sii) = match rq.winner {
                Player::I => (rq.winning_strategy(), &c),
                Player::II => (&c, rq.winning_strategy()),
            };
            referee(&q, si, sii, 4 * space.n() + 4).ok()
        });
        let tag = if d.moves().is_empty() {
            Diagnosis::OmegaDegeneracy
        } else if t.as_ref().is_some_and(|t| matches!(t.terminal, Terminal::StuckI | Terminal::StuckII)) {
            Diagnosis::StuckRuleArtifact
        } else {
            Diagnosis::Genuine
        };
        (Some(tag), t)
    };
    Ok(DualityRow {
        space: name.to_string(),
        x,
        qgame: rq.winner,
        dual: rd.winner,
        agree,
        diagnosis,
        transcript,
    })
}

/// Every labeled topology with at most `n_max` points, every non-isolated
/// point.
pub fn verify_duality(n_max: usize) -> Result<DualityReport, HarnessError> {
    let rows: Result<Vec<DualityRow>, HarnessError> = instances(n_max)?
        .par_iter()
        .map(|(name, space, x)| duality_row(space, *x, name))
        .collect();
    let rows = rows?;
    let agreements = rows.iter().filter(|r| r.agree).count();
    Ok(DualityReport { rows, agreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{indiscrete, sierpinski};

    #[test]
    fn examples() {
        let r = duality_row(&sierpinski(), 0, "sierpinski").unwrap();
        assert_eq!((r.qgame, r.dual, r.agree), (Player::I, Player::II, true));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"space":"sierpinski","x":0,"qgame":"I","dual":"II","agree":true}"#
        );
        let r = duality_row(&indiscrete(2).unwrap(), 0, "indiscrete:2").unwrap();
        assert!(r.agree);
    }

    #[test]
    fn small_sweep() {
        let r = verify_duality(3).unwrap();
        assert_eq!(r.agreements, r.rows.len());
    }
}
