use std::collections::BTreeMap;

use crate::game::{GameSpec, Strategy};
use crate::topology::PointSet;

use super::{SolveResult, SolveStats};

/// Whether I wins from accumulated set `s` by offering `a`, given the
/// verdicts for all strictly larger sets.
fn move_wins(spec: &GameSpec, win: &[bool], s: PointSet, a: PointSet) -> bool {
    let wins_after = |b: usize| win[s.with(b).bits() as usize];
    if spec.injective() {
        let fresh = a.difference(s);
        if fresh.is_empty() {
            // II is stuck and the play is judged on s
            !spec.in_outcome(s)
        } else {
            fresh.iter().all(wins_after)
        }
    } else if spec.in_outcome(s) {
        // II would happily stay inside s forever
        !a.intersects(s) && a.iter().all(wins_after)
    } else {
        a.difference(s).iter().all(wins_after)
    }
}

/// Descending induction over accumulated sets. With `prune`, non-injective
/// games only consider ⊆-minimal offers, which is sound because a smaller
/// offer never helps II there.
pub(super) fn solve_set_game(spec: &GameSpec, prune: bool) -> SolveResult {
    let n = spec.space().n();
    let mut order: Vec<PointSet> = PointSet::all_subsets(n).collect();
    order.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let offers: &[PointSet] = if prune && !spec.injective() {
        spec.minimal_moves()
    } else {
        spec.moves()
    };

    let mut win = vec![false; 1 << n];
    let mut examined = 0usize;
    for &s in &order {
        win[s.bits() as usize] = offers.iter().any(|&a| {
            examined += 1;
            move_wins(spec, &win, s, a)
        });
    }

    let mut table_i = BTreeMap::new();
    let mut table_ii = BTreeMap::new();
    for &s in &order {
        if win[s.bits() as usize] {
            let a = *offers
                .iter()
                .find(|&&a| move_wins(spec, &win, s, a))
                .expect("a winning position has a witnessing offer");
            table_i.insert(s, a);
            continue;
        }
        for &a in spec.moves() {
            let loses_after = |b: &usize| !win[s.with(*b).bits() as usize];
            let pick = if spec.injective() {
                let fresh = a.difference(s);
                if fresh.is_empty() {
                    continue;
                }
                fresh.iter().find(loses_after)
            } else if spec.in_outcome(s) && a.intersects(s) {
                a.intersection(s).first()
            } else {
                a.difference(s).iter().find(loses_after)
            };
            let b = pick.expect("a losing position for I has a refuting pick");
            table_ii.insert((s, a), b);
        }
    }

    let i_wins = win[0];
    SolveResult::new(
        i_wins,
        Strategy::offer_table(table_i),
        Strategy::pick_table(table_ii),
        SolveStats {
            positions: order.len(),
            moves_examined: examined,
        },
        spec.moves().is_empty(),
        Some(win),
    )
}
