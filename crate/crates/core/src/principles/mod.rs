//! Selection principles on finite spaces.

mod s1;

use serde::Serialize;
use thiserror::Error;

use crate::game::GameError;
use crate::ordinal::{Interval, Ordinal};
use crate::topology::{FamilyError, FamilyId, FiniteSpace, PointSet};

pub use s1::{s1_holds, s1_holds_exhaustive, s1_oracle, S1Evidence, S1Verdict, MAX_SUBFAMILY_MEMBERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrincipleError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("family has {0} minimal members, more than the exhaustive search allows")]
    TooManyMembers(usize),
    #[error("point {point} is outside a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },
}

/// `S₁*(𝒜, ℬ)` asks for an injective selection, which a finite carrier
/// cannot supply for an ω-sequence. It holds only vacuously, when `𝒜` has
/// no members.
pub fn s1_star_holds(space: &FiniteSpace, a: &FamilyId, _b: &FamilyId) -> Result<bool, PrincipleError> {
    let a = a.clone().checked(space)?;
    Ok(a.members(space).iter().all(|m| m.is_empty()))
}

/// Finite-stage evidence on `[0, ω]` at `ω`: with `V_n = (n, ω]`, every
/// injective selection of `k` picks `x_n ∈ V_n` has all but the first `m`
/// picks inside `(m, ω]`, so it cannot be closed discrete.
#[derive(Debug, Clone, Serialize)]
pub struct OrdinalS1StarReport {
    pub horizon: usize,
    pub selections: usize,
    pub tails_inside_every_neighbourhood: bool,
}

pub fn s1_star_ordinal_report(horizon: usize, selections: &[Vec<Ordinal>]) -> OrdinalS1StarReport {
    let schedule = |n: usize| Interval::above(Ordinal::finite(n as u64), Ordinal::omega());
    let ok = selections.iter().all(|picks| {
        let legal = picks.iter().enumerate().all(|(n, p)| schedule(n).contains(p));
        let injective = picks.iter().enumerate().all(|(i, p)| !picks[..i].contains(p));
        let tails = (0..picks.len()).all(|m| picks[m..].iter().all(|p| schedule(m).contains(p)));
        legal && injective && tails
    });
    OrdinalS1StarReport {
        horizon,
        selections: selections.len(),
        tails_inside_every_neighbourhood: ok,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeqS1Report {
    /// `(S₁)(τ*, ¬L_x)` fails.
    pub fails: bool,
    /// A nonempty open set whose constant schedule forces accumulation.
    pub witness: Option<PointSet>,
    /// A countable open π-network exists at the point.
    pub pi_network: bool,
}

impl SeqS1Report {
    pub fn equivalence_holds(&self) -> bool {
        self.fails == self.pi_network
    }
}

/// Decides `¬(S₁)(τ*, ¬L_x)`. A selection from nonempty opens `V_n` can
/// avoid the minimal neighbourhood of `x` whenever `V_n` is not inside it,
/// so the principle fails iff some nonempty open set lies inside every
/// neighbourhood of `x`. The π-network side is computed separately.
pub fn seq_s1_fails(space: &FiniteSpace, x: usize) -> Result<SeqS1Report, PrincipleError> {
    if x >= space.n() {
        return Err(PrincipleError::PointOutOfRange { point: x, n: space.n() });
    }
    let nbhds: Vec<PointSet> = space.opens_containing(x).collect();
    let witness = space
        .opens()
        .into_iter()
        .filter(|v| !v.is_empty())
        .filter(|&v| nbhds.iter().all(|&u| v.is_subset(u)))
        .max_by_key(|v| (v.len(), *v));
    Ok(SeqS1Report {
        fails: witness.is_some(),
        witness,
        pi_network: pi_network_exists(space, x),
    })
}

/// The family of all nonempty open sets is finite, hence countable; it is a
/// π-network at `x` iff every neighbourhood of `x` contains one of them.
pub fn pi_network_exists(space: &FiniteSpace, x: usize) -> bool {
    let family: Vec<PointSet> = space.opens().into_iter().filter(|v| !v.is_empty()).collect();
    space
        .opens_containing(x)
        .all(|u| family.iter().any(|v| v.is_subset(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{chain, enumerate_topologies, sierpinski};

    #[test]
    fn seq_examples() {
        let r = seq_s1_fails(&sierpinski(), 0).unwrap();
        assert!(r.fails && r.pi_network);
        assert_eq!(r.witness, Some(PointSet::from_points([0, 1])));
        let r = seq_s1_fails(&chain(3).unwrap(), 0).unwrap();
        assert_eq!(r.witness, Some(PointSet::from_points([0, 1, 2])));
    }

    #[test]
    fn pi_network_equivalence_n4() {
        for s in enumerate_topologies(4).unwrap() {
            for x in s.points() {
                let r = seq_s1_fails(&s, x).unwrap();
                assert!(r.fails && r.equivalence_holds());
                // every selection from the witness lands in the minimal neighbourhood
                assert!(r.witness.unwrap().is_subset(s.min_nbhd(x)));
            }
        }
    }

    #[test]
    fn s1_star_is_false_on_finite_carriers() {
        let s = sierpinski();
        assert!(!s1_star_holds(&s, &FamilyId::TauX(0), &FamilyId::CD).unwrap());
        assert!(s1_star_holds(&s, &FamilyId::OmegaX(1), &FamilyId::CD).unwrap());
    }

    #[test]
    fn ordinal_injective_selections_accumulate() {
        // x_n = n + 1 + j for small offsets j, kept injective by increasing order
        let selections: Vec<Vec<Ordinal>> = (0..5u64)
            .map(|j| (0..20u64).map(|n| Ordinal::finite(n + 1 + j)).collect())
            .collect();
        let r = s1_star_ordinal_report(20, &selections);
        assert!(r.tails_inside_every_neighbourhood);
        let bad = vec![vec![Ordinal::finite(1), Ordinal::finite(1)]];
        assert!(!s1_star_ordinal_report(2, &bad).tails_inside_every_neighbourhood);
    }
}
