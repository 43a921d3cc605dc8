//! Combinators between the q-game `G₁*(τ_x, CD)`, the dual game
//! `G₁(Ω_x, ⋃_p Ω_p)`, the strong fan tightness game `G₁(Ω_x, Ω_x)` and the
//! neighbourhood game `G₁(τ_x, ¬Γ_x)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::game::{state_hash, GameSpec, Player, Round, Strategy, StrategyError, View};
use crate::topology::{FamilyId, PointSet};

use super::onion::replay_offers;
use super::TransformError;

fn owned(s: &Strategy, owner: Player, role: &'static str) -> Result<(), TransformError> {
    if s.owner() == owner {
        Ok(())
    } else {
        Err(TransformError::Role { expected: owner, found: s.owner(), role })
    }
}

/// Least point of `set`, preferring points outside `avoid`.
fn least_fresh(set: PointSet, avoid: PointSet) -> Option<usize> {
    set.difference(avoid).first().or_else(|| set.first())
}

fn availability(stage: usize, detail: String) -> StrategyError {
    StrategyError::Precondition(TransformError::Availability { stage, detail }.to_string())
}

/// (i) Player I's q-game strategy gives Player II a dual-game strategy:
/// answer `A_n` with the least point of `A_n ∩ σ(h)`, taking a new point
/// whenever one is available. `h` replays the picks against `σ`.
pub fn dual_i(q_spec: &GameSpec, sigma: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    owned(sigma, Player::I, "q-game")?;
    let target = GameSpec::dual_game(q_spec.space().clone(), x)?;
    let (q, sigma) = (q_spec.clone(), sigma.clone());
    let (q2, sigma2) = (q.clone(), sigma.clone());
    let strategy = Strategy::combinator_ii(
        "dual_i",
        move |view, offer| {
            let picks: Vec<usize> = view.picks().collect();
            let rounds = replay_offers(&q, &sigma, &picks)?;
            let v = sigma.offer(&View { spec: &q, history: &rounds })?;
            least_fresh(offer.intersection(v), view.picked())
                .ok_or_else(|| availability(picks.len(), format!("A = {offer} misses σ(h) = {v}")))
        },
        move |view| {
            let picks: Vec<usize> = view.picks().collect();
            replay_offers(&q2, &sigma2, &picks)
                .map(|r| sigma2.state_key(&View { spec: &q2, history: &r }))
                .unwrap_or(u64::MAX)
        },
    );
    Ok((target, strategy))
}

/// (ii) Player I's dual-game strategy gives Player II a q-game strategy:
/// answer `A_n` with the least new point of `ρ(h) ∩ A_n`.
pub fn dual_ii(dual_spec: &GameSpec, rho: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    owned(rho, Player::I, "dual game")?;
    let target = GameSpec::q_game(dual_spec.space().clone(), x)?;
    let (d, rho) = (dual_spec.clone(), rho.clone());
    let (d2, rho2) = (d.clone(), rho.clone());
    let strategy = Strategy::combinator_ii(
        "dual_ii",
        move |view, offer| {
            let picks: Vec<usize> = view.picks().collect();
            let rounds = replay_offers(&d, &rho, &picks)?;
            let r = rho.offer(&View { spec: &d, history: &rounds })?;
            offer
                .intersection(r)
                .difference(view.picked())
                .first()
                .ok_or_else(|| availability(picks.len(), format!("ρ(h) ∩ A = {r} ∩ {offer} has no new point")))
        },
        move |view| {
            let picks: Vec<usize> = view.picks().collect();
            replay_offers(&d2, &rho2, &picks)
                .map(|r| rho2.state_key(&View { spec: &d2, history: &r }))
                .unwrap_or(u64::MAX)
        },
    );
    Ok((target, strategy))
}

/// For each earlier pick, the least open in `τ_x` that `σ` answers with it.
fn recover_opens(q: &GameSpec, sigma: &Strategy, picks: &[usize]) -> Result<Vec<Round>, StrategyError> {
    let mut rounds: Vec<Round> = Vec::with_capacity(picks.len());
    for (k, &b) in picks.iter().enumerate() {
        let mut found = None;
        for &v in q.moves() {
            if sigma.pick(&View { spec: q, history: &rounds }, v).ok() == Some(b) {
                found = Some(v);
                break;
            }
        }
        let v = found.ok_or_else(|| availability(k, format!("no open is answered by {b}")))?;
        rounds.push(Round { offer: v, b: Some(b) });
    }
    Ok(rounds)
}

/// (iii) Player II's q-game strategy gives Player I a dual-game strategy:
/// offer `{σ(h, V) : V ∈ τ_x}`, which must lie in `Ω_x`.
pub fn dual_iii(q_spec: &GameSpec, sigma: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    owned(sigma, Player::II, "q-game")?;
    let target = GameSpec::dual_game(q_spec.space().clone(), x)?;
    let (q, sigma) = (q_spec.clone(), sigma.clone());
    let omega = FamilyId::OmegaX(x);
    let strategy = Strategy::combinator_i(
        "dual_iii",
        move |view| {
            let picks: Vec<usize> = view.picks().collect();
            let rounds = recover_opens(&q, &sigma, &picks)?;
            let hv = View { spec: &q, history: &rounds };
            let legal: Vec<PointSet> = q.moves().iter().copied().filter(|v| !v.difference(hv.picked()).is_empty()).collect();
            let answers: PointSet = legal.iter().filter_map(|&v| sigma.pick(&hv, v).ok()).collect();
            if omega.contains(q.space(), answers) {
                Ok(answers)
            } else {
                Err(StrategyError::Precondition(
                    TransformError::NotInOmega { stage: picks.len(), set: answers.to_string() }.to_string(),
                ))
            }
        },
        // σ is positional, so the q-game position is the recovered pick set
        |_| 0,
    );
    Ok((target, strategy))
}

/// (iv) Player II's dual-game strategy gives Player I a q-game strategy:
/// offer the least `V ∈ τ_x` with `V ∖ {x} ⊆ {ρ(h, A) : A ∈ Ω_x}`.
pub fn dual_iv(dual_spec: &GameSpec, rho: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    owned(rho, Player::II, "dual game")?;
    let space = dual_spec.space().clone();
    let target = GameSpec::q_game(space.clone(), x)?;
    let d = dual_spec.clone();
    let rho = rho.clone();
    let strategy = Strategy::combinator_i(
        "dual_iv",
        move |view| {
            // replay the picks other than x as ρ's answers
            let mut rounds: Vec<Round> = Vec::new();
            for (k, b) in view.picks().enumerate() {
                if b == x {
                    continue;
                }
                let a = d
                    .moves()
                    .iter()
                    .copied()
                    .find(|&a| rho.pick(&View { spec: &d, history: &rounds }, a).ok() == Some(b))
                    .ok_or_else(|| availability(k, format!("no Ω-set is answered by {b}")))?;
                rounds.push(Round { offer: a, b: Some(b) });
            }
            let hv = View { spec: &d, history: &rounds };
            let answers: PointSet = d.moves().iter().filter_map(|&a| rho.pick(&hv, a).ok()).collect();
            space
                .opens_containing(x)
                .find(|v| v.without(x).is_subset(answers))
                .ok_or_else(|| {
                    StrategyError::Precondition(
                        TransformError::NoOpenInside { stage: view.history.len(), answers: answers.to_string() }.to_string(),
                    )
                })
        },
        |_| 0,
    );
    Ok((target, strategy))
}

/// Player I's q-game strategy gives Player II a strategy in `G₁(Ω_x, Ω_x)`:
/// answer `A_n` with the least point of `σ(h) ∩ U_n ∩ A_n`.
pub fn na_oo(q_spec: &GameSpec, sigma: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    owned(sigma, Player::I, "q-game")?;
    let space = q_spec.space().clone();
    let target = GameSpec::csft_game(space.clone(), x)?;
    let u = space.min_nbhd(x);
    let (q, sigma) = (q_spec.clone(), sigma.clone());
    let (q2, sigma2) = (q.clone(), sigma.clone());
    let strategy = Strategy::combinator_ii(
        "na_oo",
        move |view, offer| {
            let picks: Vec<usize> = view.picks().collect();
            let rounds = replay_offers(&q, &sigma, &picks)?;
            let v = sigma.offer(&View { spec: &q, history: &rounds })?;
            v.intersection(u)
                .intersection(offer)
                .first()
                .ok_or_else(|| availability(picks.len(), format!("σ(h) ∩ U ∩ A = {v} ∩ {u} ∩ {offer} is empty")))
        },
        move |view| {
            let picks: Vec<usize> = view.picks().collect();
            replay_offers(&q2, &sigma2, &picks)
                .map(|r| sigma2.state_key(&View { spec: &q2, history: &r }))
                .unwrap_or(u64::MAX)
        },
    );
    Ok((target, strategy))
}

/// Player II in `G₁(τ_x, ¬Γ_x)` picking the least point of `A_n ∩ F_n`,
/// with `F` repeated cyclically. A play this strategy loses selects
/// `x_n ∈ F_n` converging to `x`.
pub fn frechet_refuter(space: &crate::topology::FiniteSpace, x: usize, schedule: &[PointSet]) -> Result<(GameSpec, Strategy), TransformError> {
    if schedule.is_empty() {
        return Err(TransformError::Precondition("empty schedule".into()));
    }
    let m = space.min_nbhd(x);
    if let Some((n, f)) = schedule.iter().enumerate().find(|(_, f)| !f.intersects(m)) {
        return Err(TransformError::Precondition(format!("F_{n} = {f} misses the minimal neighbourhood {m} of {x}")));
    }
    let target = GameSpec::w_game_literal(space.clone(), x)?;
    let f: Vec<PointSet> = schedule.to_vec();
    let len = f.len();
    let strategy = Strategy::combinator_ii(
        "frechet_refuter",
        move |view, offer| {
            let n = view.history.len();
            offer
                .intersection(f[n % len])
                .first()
                .ok_or_else(|| availability(n, format!("A = {offer} misses F = {}", f[n % len])))
        },
        move |view| state_hash(&(view.history.len() % len)),
    );
    Ok((target, strategy))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiBaseReport {
    /// Offers made along every Player II history up to the depth.
    pub image: Vec<PointSet>,
    pub is_pi_base: bool,
    /// A neighbourhood of `x` containing no offer; II beats `σ` by staying
    /// outside it.
    pub uncovered: Option<PointSet>,
}

/// Collects `Im(σ)` over all Player II histories of length `< depth` and
/// checks whether every neighbourhood of `x` contains a member.
pub fn pi_base_from_strategy(spec: &GameSpec, sigma: &Strategy, x: usize, depth: usize) -> Result<PiBaseReport, TransformError> {
    owned(sigma, Player::I, "sequence game")?;
    let mut image = BTreeSet::new();
    let mut frontier: Vec<Vec<Round>> = vec![Vec::new()];
    let mut seen = BTreeSet::new();
    for _ in 0..depth.max(1) {
        let mut next = Vec::new();
        for h in frontier {
            let view = View { spec, history: &h };
            let offer = sigma.offer(&view)?;
            image.insert(offer);
            // histories that reach the same strategy state behave alike
            if !seen.insert((view.picked(), sigma.state_key(&view), offer)) {
                continue;
            }
            for b in spec.legal_picks(offer, view.picked()).iter() {
                let mut h2 = h.clone();
                h2.push(Round { offer, b: Some(b) });
                next.push(h2);
            }
        }
        frontier = next;
    }
    let image: Vec<PointSet> = image.into_iter().collect();
    let uncovered = spec
        .space()
        .opens_containing(x)
        .find(|&u| !image.iter().any(|v| v.is_subset(u)));
    Ok(PiBaseReport { is_pi_base: uncovered.is_none(), image, uncovered })
}
