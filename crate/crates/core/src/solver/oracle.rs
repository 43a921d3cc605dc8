use thiserror::Error;

use crate::game::{GameSpec, Mode, Player, Round};
use crate::topology::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("game tree deeper than {0} innings")]
pub struct DepthExceeded(pub usize);

/// `|X| · (|𝒜_min| + 1)`, enough for every set-mode play to stop growing.
pub fn default_depth(spec: &GameSpec) -> usize {
    spec.space().n() * (spec.minimal_moves().len() + 1)
}

/// Plain minimax over play histories, with no memo and no pruning. A repeat
/// pick in a non-injective game ends the branch: the position is then the
/// same as before the inning, so II can hold it forever and the play is
/// judged on the current set.
pub fn oracle_game_tree(spec: &GameSpec, depth: usize) -> Result<Player, DepthExceeded> {
    match spec.mode() {
        Mode::Set => {
            let mut history = Vec::new();
            Ok(if i_wins(spec, &mut history, depth)? { Player::I } else { Player::II })
        }
        Mode::Sequence => Ok(sequence_winner(spec)),
    }
}

fn i_wins(spec: &GameSpec, history: &mut Vec<Round>, depth: usize) -> Result<bool, DepthExceeded> {
    if history.len() > depth {
        return Err(DepthExceeded(depth));
    }
    let s: PointSet = history.iter().filter_map(|r| r.b).collect();
    for &a in spec.moves() {
        let mut all = true;
        if spec.injective() && a.difference(s).is_empty() {
            all = !spec.in_outcome(s);
        }
        let picks = if spec.injective() { a.difference(s) } else { a };
        for b in picks.iter() {
            let ok = if s.contains(b) {
                !spec.in_outcome(s)
            } else {
                history.push(Round { offer: a, b: Some(b) });
                let r = i_wins(spec, history, depth);
                history.pop();
                r?
            };
            if !ok {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every inning of a sequence game returns to the same position, so a pair
/// of memoryless choices already fixes a lasso of length one. I wins iff
/// some offer cannot be answered outside the target.
fn sequence_winner(spec: &GameSpec) -> Player {
    let target = spec.target().expect("sequence game");
    let i_wins = spec
        .moves()
        .iter()
        .any(|a| a.iter().all(|b| target.contains(b)));
    if i_wins {
        Player::I
    } else {
        Player::II
    }
}
