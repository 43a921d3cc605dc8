use std::collections::BTreeMap;

use crate::game::{GameSpec, Player, Strategy};
use crate::topology::PointSet;

use super::{SolveResult, SolveStats};

/// An explicit game graph with a Büchi objective for Player I.
pub struct Arena {
    pub owner: Vec<Player>,
    pub succ: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

/// Winning regions and positional strategies of both players.
pub struct BuchiSolution {
    pub win_i: Vec<bool>,
    pub strategy_i: Vec<Option<usize>>,
    pub strategy_ii: Vec<Option<usize>>,
}

impl Arena {
    fn cpre(&self, v: usize, set: &[bool], player: Player) -> bool {
        if self.owner[v] == player {
            self.succ[v].iter().any(|&w| set[w])
        } else {
            self.succ[v].iter().all(|&w| set[w])
        }
    }

    /// `νZ. μY. (F ∩ CPre_I(Z)) ∪ CPre_I(Y)` for Player I and the dual
    /// `μZ. νY. (¬F ∩ CPre_II(Y)) ∪ CPre_II(Z)` for Player II.
    pub fn solve(&self) -> BuchiSolution {
        let len = self.owner.len();

        let mut z = vec![true; len];
        let mut rank = vec![usize::MAX; len];
        loop {
            let mut y = vec![false; len];
            rank.iter_mut().for_each(|r| *r = usize::MAX);
            for v in 0..len {
                if self.accepting[v] && self.cpre(v, &z, Player::I) {
                    y[v] = true;
                    rank[v] = 0;
                }
            }
            let mut r = 0;
            loop {
                r += 1;
                let fresh: Vec<usize> = (0..len)
                    .filter(|&v| !y[v] && self.cpre(v, &y, Player::I))
                    .collect();
                if fresh.is_empty() {
                    break;
                }
                for v in fresh {
                    y[v] = true;
                    rank[v] = r;
                }
            }
            if y == z {
                break;
            }
            z = y;
        }
        let win_i = z;
        let mut strategy_i = vec![None; len];
        for v in 0..len {
            if !win_i[v] || self.owner[v] != Player::I {
                continue;
            }
            strategy_i[v] = if rank[v] == 0 {
                self.succ[v].iter().copied().find(|&w| win_i[w])
            } else {
                self.succ[v].iter().copied().find(|&w| rank[w] < rank[v])
            };
        }

        let mut z = vec![false; len];
        let mut strategy_ii = vec![None; len];
        loop {
            let mut y = vec![true; len];
            loop {
                let next: Vec<bool> = (0..len)
                    .map(|v| {
                        (!self.accepting[v] && self.cpre(v, &y, Player::II))
                            || self.cpre(v, &z, Player::II)
                    })
                    .collect();
                if next == y {
                    break;
                }
                y = next;
            }
            for v in 0..len {
                if !y[v] || z[v] || self.owner[v] != Player::II {
                    continue;
                }
                strategy_ii[v] = self.succ[v]
                    .iter()
                    .copied()
                    .find(|&w| z[w])
                    .or_else(|| self.succ[v].iter().copied().find(|&w| y[w]));
            }
            if y == z {
                break;
            }
            z = y;
        }
        debug_assert!(
            (0..len).all(|v| win_i[v] != z[v]),
            "Büchi games are determined"
        );
        BuchiSolution { win_i, strategy_i, strategy_ii }
    }
}

/// Node 0 is I's turn; nodes `1..=k` are II facing offer `k`; the last `n`
/// nodes are the picks, accepting when they land in the target.
fn arena(spec: &GameSpec) -> Arena {
    let moves = spec.moves();
    let n = spec.space().n();
    let target = spec.target().expect("sequence game");
    let k = moves.len();
    let pick_node = |p: usize| 1 + k + p;
    let mut owner = vec![Player::I];
    let mut succ = vec![(1..=k).collect::<Vec<_>>()];
    for a in moves {
        owner.push(Player::II);
        succ.push(a.iter().map(pick_node).collect());
    }
    for _ in 0..n {
        owner.push(Player::I);
        succ.push(vec![0]);
    }
    let mut accepting = vec![false; 1 + k];
    accepting.extend((0..n).map(|p| target.contains(p)));
    Arena { owner, succ, accepting }
}

pub(super) fn solve_buchi_game(spec: &GameSpec) -> SolveResult {
    let arena = arena(spec);
    let sol = arena.solve();
    let moves = spec.moves();
    let k = moves.len();

    let mut table_i = BTreeMap::new();
    if let Some(offer_node) = sol.strategy_i[0] {
        table_i.insert(PointSet::EMPTY, moves[offer_node - 1]);
    }
    let mut table_ii = BTreeMap::new();
    for (i, &a) in moves.iter().enumerate() {
        if let Some(pick_node) = sol.strategy_ii[1 + i] {
            table_ii.insert((PointSet::EMPTY, a), pick_node - 1 - k);
        }
    }
    SolveResult::new(
        sol.win_i[0],
        Strategy::offer_table(table_i),
        Strategy::pick_table(table_ii),
        SolveStats {
            positions: arena.owner.len(),
            moves_examined: arena.succ.iter().map(Vec::len).sum(),
        },
        moves.is_empty(),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-node cycle where II may escape to a non-accepting sink loop.
    #[test]
    fn generic_arena_regions() {
        let arena = Arena {
            owner: vec![Player::I, Player::II, Player::I],
            succ: vec![vec![1], vec![0, 2], vec![2]],
            accepting: vec![true, false, false],
        };
        let sol = arena.solve();
        assert_eq!(sol.win_i, vec![false, false, false]);
        assert_eq!(sol.strategy_ii[1], Some(2));

        let arena = Arena {
            owner: vec![Player::I, Player::I, Player::I],
            succ: vec![vec![1], vec![0, 2], vec![2]],
            accepting: vec![true, false, false],
        };
        let sol = arena.solve();
        assert_eq!(sol.win_i, vec![true, true, false]);
        assert_eq!(sol.strategy_i[1], Some(0));
    }
}
