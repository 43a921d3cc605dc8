//! Deciding `S₁(𝒜, ℬ)` on a finite space.
//!
//! An ω-sequence over a finite family uses some members infinitely often and
//! the rest finitely often. Each extra occurrence only widens the choice, so
//! the hardest sequences repeat one member `A*` forever and use every other
//! member of some subfamily `𝒮` exactly once. A selection from such a
//! sequence is a nonempty `T ⊆ ⋃𝒮` meeting every member of `𝒮` in which the
//! points outside `A*` are hit by distinct members of `𝒮 ∖ {A*}`. Replacing
//! `𝒜` by its ⊆-minimal members does not change the answer.

use serde::Serialize;

use crate::game::{GameSpec, Outcome, Player, Strategy};
use crate::solver::solve;
use crate::topology::{FamilyId, FiniteSpace, PointSet};

use super::PrincipleError;

/// Subfamilies are enumerated exhaustively up to this many minimal members.
pub const MAX_SUBFAMILY_MEMBERS: usize = 20;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum S1Evidence {
    /// Player II wins `G₁(𝒜, ℬ)`; her strategy answers any fixed sequence.
    #[serde(skip_serializing)]
    GameStrategy(Strategy),
    /// Every hardest sequence admits a good selection.
    Exhaustive { sequences_checked: usize },
    /// Repeating `repeated` forever and playing each other member of
    /// `subfamily` once admits no selection in `ℬ`.
    Refuter {
        subfamily: Vec<PointSet>,
        repeated: PointSet,
    },
    /// `𝒜` has no members.
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct S1Verdict {
    pub holds: bool,
    pub evidence: S1Evidence,
}

/// Augmenting-path matching of the points of `rest` into distinct members.
fn can_cover(rest: &[usize], members: &[PointSet]) -> bool {
    fn augment(p: usize, rest: &[usize], members: &[PointSet], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for (m, a) in members.iter().enumerate() {
            if a.contains(rest[p]) && !seen[m] {
                seen[m] = true;
                if owner[m].map_or(true, |q| augment(q, rest, members, seen, owner)) {
                    owner[m] = Some(p);
                    return true;
                }
            }
        }
        false
    }
    if rest.len() > members.len() {
        return false;
    }
    let mut owner = vec![None; members.len()];
    (0..rest.len()).all(|p| {
        let mut seen = vec![false; members.len()];
        augment(p, rest, members, &mut seen, &mut owner)
    })
}

/// Is there a selection in `ℬ` when `star` repeats forever and each of
/// `others` is played once?
fn hardest_sequence_ok(
    in_b: &dyn Fn(PointSet) -> bool,
    star: PointSet,
    others: &[PointSet],
) -> bool {
    let union = others.iter().fold(star, |u, &a| u.union(a));
    union.subsets().any(|t| {
        !t.is_empty()
            && in_b(t)
            && t.intersects(star)
            && others.iter().all(|a| a.intersects(t))
            && can_cover(&t.difference(star).to_vec(), others)
    })
}

/// Exhaustive decision over subfamilies of the minimal members, smallest
/// first, so refuters are as small as possible.
pub fn s1_holds_exhaustive(
    space: &FiniteSpace,
    a: &FamilyId,
    b: &FamilyId,
) -> Result<S1Verdict, PrincipleError> {
    let a = a.clone().checked(space)?;
    let b = b.clone().checked(space)?;
    let members: Vec<PointSet> = a
        .minimal_members(space)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    if members.is_empty() {
        return Ok(S1Verdict { holds: true, evidence: S1Evidence::Vacuous });
    }
    if members.len() > MAX_SUBFAMILY_MEMBERS {
        return Err(PrincipleError::TooManyMembers(members.len()));
    }
    let table: Vec<bool> = PointSet::all_subsets(space.n())
        .map(|s| b.contains(space, s))
        .collect();
    let in_b = |s: PointSet| table[s.bits() as usize];

    let k = members.len();
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut checked = 0;
    for mask in masks {
        let sub: Vec<PointSet> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| members[i]).collect();
        for (i, &star) in sub.iter().enumerate() {
            let others: Vec<PointSet> = sub
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &s)| s)
                .collect();
            checked += 1;
            if !hardest_sequence_ok(&in_b, star, &others) {
                return Ok(S1Verdict {
                    holds: false,
                    evidence: S1Evidence::Refuter { subfamily: sub, repeated: star },
                });
            }
        }
    }
    Ok(S1Verdict {
        holds: true,
        evidence: S1Evidence::Exhaustive { sequences_checked: checked },
    })
}

/// Decides `S₁(𝒜, ℬ)`. A solver win for Player II in `G₁(𝒜, ℬ)` settles it
/// at once; otherwise the subfamily search runs.
pub fn s1_holds(space: &FiniteSpace, a: &FamilyId, b: &FamilyId) -> Result<S1Verdict, PrincipleError> {
    let spec = GameSpec::new(space.clone(), a.clone(), Outcome::Family(b.clone()), false)?;
    if spec.moves().is_empty() {
        return Ok(S1Verdict { holds: true, evidence: S1Evidence::Vacuous });
    }
    let result = solve(&spec);
    if result.winner == Player::II {
        return Ok(S1Verdict {
            holds: true,
            evidence: S1Evidence::GameStrategy(result.winning_strategy().clone()),
        });
    }
    s1_holds_exhaustive(space, a, b)
}

/// Brute force over eventually periodic schedules: a multiset of members
/// played finitely often (at most `len` plays in total) and a nonempty set
/// of members played forever. The achievable outcome sets are built up
/// member by member. Schedules with `len ≥ |𝒜|` include every hardest one.
pub fn s1_oracle(space: &FiniteSpace, a: &FamilyId, b: &FamilyId, len: usize) -> Result<bool, PrincipleError> {
    let a = a.clone().checked(space)?;
    let b = b.clone().checked(space)?;
    let members: Vec<PointSet> = a.members(space).into_iter().filter(|s| !s.is_empty()).collect();
    if members.is_empty() {
        return Ok(true);
    }
    if members.len() > MAX_SUBFAMILY_MEMBERS {
        return Err(PrincipleError::TooManyMembers(members.len()));
    }
    let n = space.n();
    let in_b: Vec<bool> = PointSet::all_subsets(n).map(|s| b.contains(space, s)).collect();
    let k = members.len();
    let mut counts = vec![0usize; k];
    loop {
        for cycle in 1..(1u32 << k) {
            let mut reach = vec![false; 1 << n];
            reach[0] = true;
            for (i, &m) in members.iter().enumerate() {
                let forever = cycle & (1 << i) != 0;
                if !forever && counts[i] == 0 {
                    continue;
                }
                let cap = if forever { usize::MAX } else { counts[i] };
                let mut next = vec![false; 1 << n];
                for (r, _) in reach.iter().enumerate().filter(|(_, &on)| on) {
                    for o in m.subsets().filter(|o| !o.is_empty() && o.len() <= cap) {
                        next[(r as u32 | o.bits()) as usize] = true;
                    }
                }
                reach = next;
            }
            let good = reach.iter().zip(&in_b).any(|(&on, &ok)| on && ok);
            if !good {
                return Ok(false);
            }
        }
        // next count vector with total at most `len`
        let mut i = 0;
        loop {
            if i == k {
                return Ok(true);
            }
            counts[i] += 1;
            if counts.iter().sum::<usize>() <= len {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete, sierpinski};

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    #[test]
    fn examples() {
        let s = sierpinski();
        assert!(s1_holds(&s, &FamilyId::OmegaX(0), &FamilyId::OmegaX(0)).unwrap().holds);
        assert!(s1_holds(&s, &FamilyId::TauX(0), &FamilyId::CD).unwrap().holds);
        let d = discrete(2).unwrap();
        let v = s1_holds(&d, &FamilyId::OmegaX(0), &FamilyId::CD).unwrap();
        assert!(v.holds);
        assert!(matches!(v.evidence, S1Evidence::Vacuous));
        assert!(s1_oracle(&s, &FamilyId::OmegaX(0), &FamilyId::OmegaX(0), 4).unwrap());
    }

    #[test]
    fn members_used_once_matter() {
        // with 𝒜 = {{0,1},{2,3}}, repeating {0,1} and playing {2,3} once can
        // only reach sets of size ≤ 3 that straddle both members
        let d = discrete(4).unwrap();
        let a = FamilyId::Explicit(vec![ps(&[0, 1]), ps(&[2, 3])]);
        let mut good: Vec<PointSet> = PointSet::full(4)
            .subsets()
            .filter(|t| !t.is_empty() && (t.is_subset(ps(&[0, 1])) || t.is_subset(ps(&[2, 3]))))
            .collect();
        good.push(PointSet::full(4));
        let b = FamilyId::Explicit(good);
        let v = s1_holds(&d, &a, &b).unwrap();
        assert!(!v.holds);
        assert!(!s1_oracle(&d, &a, &b, 2).unwrap());
        // the plain "some T ⊆ ⋃𝒮 meeting every member" test would say yes
        assert!(b.contains(&d, PointSet::full(4)));
    }

    #[test]
    fn matching_needs_distinct_members() {
        assert!(can_cover(&[0, 1], &[ps(&[0, 1]), ps(&[1])]));
        assert!(!can_cover(&[0, 1], &[ps(&[0, 1])]));
        assert!(!can_cover(&[2], &[ps(&[0, 1])]));
    }
}
