//! The ω₁+1 example: Player I offers tails `(last+1, W1]` and every
//! countable stage stays away from the top point.

use rand::Rng;
use serde::Serialize;

use super::number::{ord_sup, Ordinal};
use super::space::{Interval, OrdinalError};

/// Default number of simulated innings.
pub const DEFAULT_HORIZON: usize = 128;

/// Player I's move after II picked `history`. A `W1` pick is barred.
pub fn omega1_strategy_i(history: &[Ordinal]) -> Result<Interval, OrdinalError> {
    if history.iter().any(Ordinal::is_omega1) {
        return Err(OrdinalError::BarredPick);
    }
    match history.last() {
        None => Ok(Interval::from_zero(Ordinal::Omega1)),
        Some(last) => {
            let next = last.succ().expect("picks below W1 have successors");
            Ok(Interval::above(next, Ordinal::Omega1))
        }
    }
}

/// The least point of the offer below `W1`.
pub fn omega1_counter_ii(offer: &Interval) -> Result<Ordinal, OrdinalError> {
    match offer.least() {
        Some(p) if !p.is_omega1() => Ok(p),
        _ => Err(OrdinalError::EmptyOffer(offer.clone())),
    }
}

/// A pick `lo + 1 + r` for a random CNF `r`, so it always lands strictly
/// inside `(lo, W1)`.
pub fn random_pick<R: Rng>(rng: &mut R, offer: &Interval) -> Result<Ordinal, OrdinalError> {
    let start = omega1_counter_ii(offer)?;
    let terms: Vec<(u32, u64)> = (0..rng.gen_range(0..3))
        .map(|_| (rng.gen_range(0..4), rng.gen_range(1..10)))
        .collect();
    let pick = start
        .add(&Ordinal::from_terms(terms))
        .expect("CNF sums stay below W1");
    debug_assert!(offer.contains(&pick));
    Ok(pick)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdinalMove {
    #[serde(rename = "A")]
    pub offer: Interval,
    pub b: Ordinal,
}

/// A bounded prefix of a play. No winner is recorded: the game is decided
/// only in the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdinalTranscript {
    pub moves: Vec<OrdinalMove>,
    pub terminal: &'static str,
    pub winner: Option<&'static str>,
}

impl OrdinalTranscript {
    pub fn picks(&self) -> Vec<Ordinal> {
        self.moves.iter().map(|m| m.b.clone()).collect()
    }
}

/// Plays `horizon` innings of I's tail strategy against `adversary`, which
/// sees the offer and the earlier picks. Illegal picks are reported.
pub fn simulate_omega1<F>(horizon: usize, mut adversary: F) -> Result<OrdinalTranscript, OrdinalError>
where
    F: FnMut(&Interval, &[Ordinal]) -> Result<Ordinal, OrdinalError>,
{
    let mut picks: Vec<Ordinal> = Vec::with_capacity(horizon);
    let mut moves = Vec::with_capacity(horizon);
    for inning in 0..horizon {
        let offer = omega1_strategy_i(&picks)?;
        let pick = adversary(&offer, &picks)?;
        if !offer.contains(&pick) || pick.is_omega1() {
            return Err(OrdinalError::IllegalPick { inning, offer, pick });
        }
        picks.push(pick.clone());
        moves.push(OrdinalMove { offer, b: pick });
    }
    Ok(OrdinalTranscript {
        moves,
        terminal: "horizon",
        winner: None,
    })
}

/// Finite-stage consequences checked on a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub innings: usize,
    pub strictly_increasing: bool,
    pub below_omega1: bool,
    pub sup: Ordinal,
    /// `(sup, W1]` holds none of the picks.
    pub top_not_accumulated: bool,
}

impl PrefixReport {
    pub fn holds(&self) -> bool {
        self.strictly_increasing && self.below_omega1 && self.top_not_accumulated
    }
}

pub fn check_prefix(picks: &[Ordinal]) -> PrefixReport {
    let sup = ord_sup(picks);
    let tail = Interval::above(sup.clone(), Ordinal::Omega1);
    PrefixReport {
        innings: picks.len(),
        strictly_increasing: picks.windows(2).all(|w| w[0] < w[1]),
        below_omega1: picks.iter().all(|p| !p.is_omega1()),
        top_not_accumulated: !sup.is_omega1() && picks.iter().all(|p| !tail.contains(p)),
        sup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn strategy_examples() {
        assert_eq!(omega1_strategy_i(&[]).unwrap(), Interval::from_zero(Ordinal::Omega1));
        assert_eq!(
            omega1_strategy_i(&[o("5"), o("w+1")]).unwrap(),
            Interval::above(o("w+2"), Ordinal::Omega1)
        );
        assert_eq!(
            omega1_strategy_i(&[o("w^2")]).unwrap(),
            Interval::above(o("w^2+1"), Ordinal::Omega1)
        );
        assert_eq!(omega1_strategy_i(&[Ordinal::Omega1]), Err(OrdinalError::BarredPick));
    }

    #[test]
    fn counter_examples() {
        assert_eq!(omega1_counter_ii(&Interval::from_zero(Ordinal::Omega1)).unwrap(), o("0"));
        assert_eq!(
            omega1_counter_ii(&Interval::above(o("w"), Ordinal::Omega1)).unwrap(),
            o("w+1")
        );
        assert_eq!(
            omega1_counter_ii(&Interval::above(o("w^2+1"), Ordinal::Omega1)).unwrap(),
            o("w^2+2")
        );
        assert!(omega1_counter_ii(&Interval::above(o("3"), o("3"))).is_err());
    }

    #[test]
    fn five_inning_prefix_is_increasing() {
        let t = simulate_omega1(5, |offer, _| omega1_counter_ii(offer)).unwrap();
        assert_eq!(t.moves.len(), 5);
        // independent expectation: I always offers the tail above last+1,
        // II takes its least point, so picks are 0, 2, 4, 6, 8
        assert_eq!(t.picks(), ["0", "2", "4", "6", "8"].map(o).to_vec());
        assert!(check_prefix(&t.picks()).holds());
    }

    #[test]
    fn illegal_adversary_is_blamed() {
        let err = simulate_omega1(3, |_, _| Ok(Ordinal::Omega1)).unwrap_err();
        assert!(matches!(err, OrdinalError::IllegalPick { inning: 0, .. }));
    }

    #[test]
    fn random_adversaries_keep_prefix_invariants() {
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = simulate_omega1(DEFAULT_HORIZON, |offer, _| random_pick(&mut rng, offer))
                .unwrap();
            let report = check_prefix(&t.picks());
            assert!(report.holds(), "seed {seed}: {report:?}");
        }
    }

    #[test]
    fn transcript_json_uses_ordinal_strings() {
        let t = simulate_omega1(2, |offer, _| omega1_counter_ii(offer)).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"moves":[{"A":"[0,W1]","b":"0"},{"A":"(1,W1]","b":"2"}],"terminal":"horizon","winner":null}"#
        );
    }
}
