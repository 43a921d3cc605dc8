//! Every combinator run on every small instance its input exists for.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::game::{verify_strategy, GameSpec, Player, RefereeError, Strategy, StrategyError, VerifyFailure};
use crate::ordinal::{Interval, Ordinal, OrdinalSpace};
use crate::solver::solve;
use crate::topology::{FamilyId, FiniteSpace, PointSet};
use crate::transformers::{
    dual_i, dual_ii, dual_iii, dual_iv, frechet_refuter, ii_transfer, ii_transfer_picks, na_oo, pi_base_from_strategy,
    q_to_wtilde, q_to_wtilde_trace, s1_onion_schedule, s1_onion_witness, TransformError,
};

use super::{instances, HarnessError};

pub const COMBINATORS: [&str; 11] = [
    "dual_i",
    "dual_ii",
    "dual_iii",
    "dual_iv",
    "na_oo",
    "q_to_wtilde",
    "II_transfer",
    "frechet_refuter",
    "s1_onion_witness",
    "pi_base_from_strategy",
    "frechet_refuter:singletons",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail(String),
    Precondition,
    /// No certified input exists at this instance.
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub space: String,
    pub x: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformerRow {
    pub combinator: String,
    pub instances: usize,
    /// Certified input present and the construction's hypotheses held.
    pub validated: usize,
    pub passed: usize,
    pub failed: usize,
    pub precondition_failures: usize,
    pub vacuous: usize,
    pub failures: Vec<Failure>,
}

impl TransformerRow {
    fn new(name: &str) -> Self {
        TransformerRow {
            combinator: name.to_string(),
            instances: 0,
            validated: 0,
            passed: 0,
            failed: 0,
            precondition_failures: 0,
            vacuous: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, outcome: Outcome, space: &str, x: usize) {
        self.instances += 1;
        match outcome {
            Outcome::Pass => {
                self.validated += 1;
                self.passed += 1;
            }
            Outcome::Fail(detail) => {
                self.validated += 1;
                self.failed += 1;
                self.failures.push(Failure { space: space.to_string(), x, detail });
            }
            Outcome::Precondition => self.precondition_failures += 1,
            Outcome::Vacuous => self.vacuous += 1,
        }
    }

    pub fn pass_rate(&self) -> f64 {
        if self.validated == 0 {
            100.0
        } else {
            100.0 * self.passed as f64 / self.validated as f64
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformerReport {
    pub n_max: usize,
    pub rows: Vec<TransformerRow>,
}

impl TransformerReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.failed == 0)
    }
}

fn verdict(v: Result<crate::game::VerifyReport, VerifyFailure>) -> Outcome {
    match v {
        Ok(_) => Outcome::Pass,
        Err(VerifyFailure::Move(RefereeError::Strategy { source: StrategyError::Precondition(_), .. })) => {
            Outcome::Precondition
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn run(built: Result<(GameSpec, Strategy), TransformError>) -> Outcome {
    match built {
        Ok((spec, s)) => verdict(verify_strategy(&spec, &s)),
        Err(
            TransformError::Separation { .. }
            | TransformError::Shrink { .. }
            | TransformError::NotRegular
            | TransformError::Precondition(_),
        ) => Outcome::Precondition,
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// A play the refuter loses must pick from the schedule and converge.
fn frechet_outcome(space: &FiniteSpace, x: usize, schedule: &[PointSet]) -> Outcome {
    let (spec, s) = match frechet_refuter(space, x, schedule) {
        Ok(built) => built,
        Err(TransformError::Precondition(_)) => return Outcome::Precondition,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match verify_strategy(&spec, &s) {
        Err(VerifyFailure::Lost(t)) => {
            let in_schedule = t
                .moves
                .iter()
                .enumerate()
                .all(|(k, r)| r.b.map_or(true, |b| schedule[k % schedule.len()].contains(b)));
            let picked: PointSet = t.picks().collect();
            if in_schedule && FamilyId::GammaX(x).contains(space, picked) {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("losing play is not a selection witness: {}", t.to_json()))
            }
        }
        Ok(_) => Outcome::Fail("the refuter never loses".into()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn instance_outcomes(space: &FiniteSpace, x: usize) -> Result<Vec<Outcome>, HarnessError> {
    let q = GameSpec::q_game(space.clone(), x)?;
    let d = GameSpec::dual_game(space.clone(), x)?;
    let wt = GameSpec::wtilde_game(space.clone(), x)?;
    let (rq, rd, rw) = (solve(&q), solve(&d), solve(&wt));
    let when = |cond: bool, f: &dyn Fn() -> Outcome| if cond { f() } else { Outcome::Vacuous };
    let m = space.min_nbhd(x);
    let others = m.without(x);
    let singletons: Vec<PointSet> = others.iter().map(PointSet::singleton).collect();

    Ok(vec![
        when(rq.winner == Player::I, &|| run(dual_i(&q, rq.winning_strategy(), x))),
        when(rd.winner == Player::I, &|| run(dual_ii(&d, rd.winning_strategy(), x))),
        when(rq.winner == Player::II, &|| run(dual_iii(&q, rq.winning_strategy(), x))),
        when(rd.winner == Player::II, &|| run(dual_iv(&d, rd.winning_strategy(), x))),
        when(rq.winner == Player::I, &|| run(na_oo(&q, rq.winning_strategy(), x))),
        when(rq.winner == Player::I, &|| run(q_to_wtilde(&q, rq.winning_strategy(), x))),
        when(rw.winner == Player::II, &|| run(ii_transfer(&wt, rw.winning_strategy(), x))),
        frechet_outcome(space, x, &[others]),
        match s1_onion_witness(space, x, &[m], 2 * space.n()) {
            Ok(v) if v.iter().all(|&v| space.is_open(v) && v.contains(x) && v.is_subset(m)) => Outcome::Pass,
            Ok(v) => Outcome::Fail(format!("schedule leaves the minimal neighbourhood: {v:?}")),
            Err(_) => Outcome::Precondition,
        },
        when(rw.winner == Player::I, &|| match pi_base_from_strategy(&wt, rw.winning_strategy(), x, space.n() + 1) {
            Ok(r) if r.is_pi_base => Outcome::Pass,
            Ok(r) => Outcome::Fail(format!("no offer inside {:?}", r.uncovered)),
            Err(e) => Outcome::Fail(e.to_string()),
        }),
        frechet_outcome(space, x, &singletons),
    ])
}

/// Runs every combinator over all labeled topologies with at most `n_max`
/// points and every non-isolated point, then the ordinal prefix checks.
pub fn verify_transformers(n_max: usize, seed: u64) -> Result<TransformerReport, HarnessError> {
    let per_instance: Result<Vec<(String, usize, Vec<Outcome>)>, HarnessError> = instances(n_max)?
        .par_iter()
        .map(|(name, space, x)| Ok((name.clone(), *x, instance_outcomes(space, *x)?)))
        .collect();
    let mut rows: Vec<TransformerRow> = COMBINATORS.iter().map(|c| TransformerRow::new(c)).collect();
    for (name, x, outcomes) in per_instance? {
        for (row, o) in rows.iter_mut().zip(outcomes) {
            row.record(o, &name, x);
        }
    }
    rows.extend(ordinal_prefix_checks(seed, 100, 10));
    Ok(TransformerReport { n_max, rows })
}

fn fin(k: usize) -> Ordinal {
    Ordinal::finite(k as u64)
}

fn tail(k: usize) -> Interval {
    Interval::above(fin(k), Ordinal::omega())
}

fn finite_part(o: &Ordinal) -> usize {
    o.terms()
        .and_then(|t| t.iter().find(|(e, _)| *e == 0).map(|&(_, c)| c as usize))
        .unwrap_or(0)
}

/// Random legal finite picks from an offer: its least point plus a small
/// offset. `ω` itself is never picked; the separation step needs picks
/// below the point.
fn random_finite_pick(rng: &mut ChaCha8Rng, v: &Interval) -> Option<Ordinal> {
    let least = v.least()?;
    let k = finite_part(&least) + rng.gen_range(0..4);
    let p = fin(k);
    v.contains(&p).then_some(p)
}

/// Prefix checks on `[0, ω]` at `ω` for the three onion constructions.
pub fn ordinal_prefix_checks(seed: u64, runs: usize, innings: usize) -> Vec<TransformerRow> {
    let space = OrdinalSpace::omega_plus_one();
    let w = Ordinal::omega();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![
        TransformerRow::new("ordinal:q_to_wtilde"),
        TransformerRow::new("ordinal:s1_onion_witness"),
        TransformerRow::new("ordinal:II_transfer"),
    ];
    let sigma = |picks: &[Ordinal]| -> Result<Interval, TransformError> {
        Ok(match picks.last() {
            None => Interval::from_zero(Ordinal::omega()),
            Some(p) => tail(finite_part(p) + 1),
        })
    };
    for run in 0..runs {
        let label = format!("run {run}");
        // q_to_wtilde against a random adversary
        let mut picks = Vec::new();
        let mut outcome = Outcome::Pass;
        for _ in 0..innings {
            match q_to_wtilde_trace(&space, &w, sigma, tail, &picks) {
                Ok(t) => match random_finite_pick(&mut rng, t.offers.last().expect("V_0")) {
                    Some(p) => picks.push(p),
                    None => outcome = Outcome::Fail("empty offer".into()),
                },
                Err(e) => outcome = Outcome::Fail(e.to_string()),
            }
        }
        if outcome == Outcome::Pass {
            outcome = match q_to_wtilde_trace(&space, &w, sigma, tail, &picks) {
                Ok(t) => {
                    let ok = (0..innings).all(|n| {
                        t.offers[n + 1].is_subset(&t.offers[n])
                            && !t.offers[n + 1].contains(&picks[n])
                            && t.offers[n..].iter().all(|v| v.is_subset(&tail(n)))
                    });
                    if ok { Outcome::Pass } else { Outcome::Fail("prefix invariant broken".into()) }
                }
                Err(e) => Outcome::Fail(e.to_string()),
            };
        }
        rows[0].record(outcome, &label, run);

        // s1_onion with a random q-point witness W_n = (c_n, ω]
        let offsets: Vec<usize> = (0..innings).map(|_| rng.gen_range(0..innings)).collect();
        let outcome = match s1_onion_schedule(&space, &w, |n| tail(offsets[n]), tail, innings) {
            Ok(v) => {
                let sel: Vec<Ordinal> = v.iter().filter_map(|v| random_finite_pick(&mut rng, v)).collect();
                let nested = v.windows(2).all(|p| p[1].is_subset(&p[0]));
                let tails = sel.len() == innings && (0..innings).all(|m| sel[m..].iter().all(|p| tail(m).contains(p)));
                if nested && tails { Outcome::Pass } else { Outcome::Fail("selection escapes a tail".into()) }
            }
            Err(e) => Outcome::Fail(e.to_string()),
        };
        rows[1].record(outcome, &label, run);

        // II_transfer with μ = least point of the shrunk offer plus a random step
        let step = rng.gen_range(0..3);
        let mu = |shrunk: &[Interval], _: &[Ordinal]| -> Result<Ordinal, TransformError> {
            let least = shrunk.last().and_then(|v| v.least()).ok_or(TransformError::Precondition("empty".into()))?;
            Ok(fin(finite_part(&least) + step))
        };
        let offers: Vec<Interval> = (0..innings)
            .map(|_| {
                let k = rng.gen_range(0..2);
                if k == 0 { Interval::from_zero(Ordinal::omega()) } else { tail(rng.gen_range(0..innings)) }
            })
            .collect();
        let outcome = match ii_transfer_picks(&space, &w, mu, tail, &offers) {
            Ok(p) if p.windows(2).all(|q| q[0] < q[1]) && p.iter().zip(&offers).all(|(p, v)| v.contains(p)) => {
                Outcome::Pass
            }
            Ok(p) => Outcome::Fail(format!("replies not increasing or illegal: {p:?}")),
            Err(e) => Outcome::Fail(e.to_string()),
        };
        rows[2].record(outcome, &label, run);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let r = verify_transformers(3, 1).unwrap();
        assert!(r.all_pass(), "{:#?}", r.rows.iter().filter(|r| r.failed > 0).collect::<Vec<_>>());
        let row = |name: &str| r.rows.iter().find(|r| r.combinator == name).unwrap().clone();
        assert!(row("dual_i").passed > 0);
        assert!(row("na_oo").passed > 0);
        assert_eq!(row("q_to_wtilde").passed, 0);
        assert!(row("q_to_wtilde").precondition_failures > 0);
        assert_eq!(row("ordinal:q_to_wtilde").passed, 100);
    }
}
