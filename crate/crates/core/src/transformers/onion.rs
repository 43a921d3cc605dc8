//! Shrinking-neighbourhood constructions: a q-point strategy becomes a
//! sequence-game strategy for Player I, a sequence-game strategy for Player
//! II becomes a q-game one, and a q-point witness becomes a schedule every
//! selection from which accumulates.

use crate::game::{state_hash, GameSpec, Round, Strategy, StrategyError, View};
use crate::topology::{FiniteSpace, PointSet};

use super::regular::RegularSpace;
use super::TransformError;

/// Offers and separators of the transformed Player I after some picks.
#[derive(Debug, Clone, PartialEq)]
pub struct OnionTrace<O> {
    /// `V_0, …, V_k`; the last one is the next offer.
    pub offers: Vec<O>,
    /// `A_0, …, A_{k-1}`: `A_n ∋ x` closes inside `V_n` and misses `x_n`.
    pub separators: Vec<O>,
}

/// `V_0 = σ(∅) ∩ U_0` and `V_n = σ(x_0, …, x_{n-1}) ∩ A_{n-1} ∩ U_n`.
pub fn q_to_wtilde_trace<S, F, G>(
    space: &S,
    x: &S::Point,
    sigma: F,
    gdelta: G,
    picks: &[S::Point],
) -> Result<OnionTrace<S::Open>, TransformError>
where
    S: RegularSpace,
    F: Fn(&[S::Point]) -> Result<S::Open, TransformError>,
    G: Fn(usize) -> S::Open,
{
    let mut offers = vec![space.meet(&sigma(&[])?, &gdelta(0))];
    let mut separators = Vec::with_capacity(picks.len());
    for n in 1..=picks.len() {
        let a = space.separate(x, &offers[n - 1], &picks[n - 1])?;
        let v = space.meet(&space.meet(&sigma(&picks[..n])?, &a), &gdelta(n));
        separators.push(a);
        offers.push(v);
    }
    Ok(OnionTrace { offers, separators })
}

/// Player II's q-game replies to `V_0, …, V_n`: `x_k = μ(W_0, …, W_k)` with
/// `W_0 = V_0 ∩ U_0` and `W_k = V_k ∩ A_{k-1} ∩ U_k`, where `A_{k-1}` closes
/// inside `W_{k-1}` and misses `x_{k-1}`. `mu` gets the shrunken offers and
/// its own earlier picks.
pub fn ii_transfer_picks<S, M, G>(
    space: &S,
    x: &S::Point,
    mu: M,
    gdelta: G,
    offers: &[S::Open],
) -> Result<Vec<S::Point>, TransformError>
where
    S: RegularSpace,
    M: Fn(&[S::Open], &[S::Point]) -> Result<S::Point, TransformError>,
    G: Fn(usize) -> S::Open,
{
    let mut shrunk: Vec<S::Open> = Vec::with_capacity(offers.len());
    let mut picks: Vec<S::Point> = Vec::with_capacity(offers.len());
    for (k, v) in offers.iter().enumerate() {
        let mut w = space.meet(v, &gdelta(k));
        if k > 0 {
            let a = space.separate(x, &shrunk[k - 1], &picks[k - 1])?;
            w = space.meet(&w, &a);
        }
        shrunk.push(w);
        let p = mu(&shrunk, &picks)?;
        if !space.contains(&shrunk[k], &p) || &p == x {
            return Err(TransformError::IllegalMu {
                inning: k,
                pick: p.to_string(),
                offered: shrunk[k].to_string(),
            });
        }
        picks.push(p);
    }
    Ok(picks)
}

/// `V_0 = W_0 ∩ U_0` and `V_{n+1} = W_{n+1} ∩ U_0 ∩ … ∩ U_{n+1} ∩ B_n` where
/// `B_n ∋ x` closes inside `V_n`. The nested closures are what make every
/// selection accumulate; the proof leaves this step implicit.
pub fn s1_onion_schedule<S, W, G>(
    space: &S,
    x: &S::Point,
    witness: W,
    gdelta: G,
    len: usize,
) -> Result<Vec<S::Open>, TransformError>
where
    S: RegularSpace,
    W: Fn(usize) -> S::Open,
    G: Fn(usize) -> S::Open,
{
    let mut schedule: Vec<S::Open> = Vec::with_capacity(len);
    let mut all_u: Option<S::Open> = None;
    for n in 0..len {
        let u = gdelta(n);
        let meet_u = match &all_u {
            None => u,
            Some(prev) => space.meet(prev, &u),
        };
        let mut v = space.meet(&witness(n), &meet_u);
        if n > 0 {
            v = space.meet(&v, &space.shrink(x, &schedule[n - 1])?);
        }
        all_u = Some(meet_u);
        schedule.push(v);
    }
    Ok(schedule)
}

/// The Gδ sequence used on a finite carrier: the minimal neighbourhood,
/// repeated. Its intersection is `{x}` only when `x` is isolated; finite
/// sweeps use it as the closest available stand-in.
pub fn finite_gdelta(space: &FiniteSpace, x: usize) -> impl Fn(usize) -> PointSet + Clone {
    let m = space.min_nbhd(x);
    move |_| m
}

fn to_strategy_error(e: TransformError) -> StrategyError {
    match e {
        TransformError::Strategy(s) => s,
        e @ (TransformError::Separation { .. } | TransformError::Shrink { .. } | TransformError::NotRegular) => {
            StrategyError::Precondition(e.to_string())
        }
        e => StrategyError::Combinator(e.to_string()),
    }
}

/// The rounds `σ` would have seen if Player II had answered it with `picks`.
pub(crate) fn replay_offers(spec: &GameSpec, sigma: &Strategy, picks: &[usize]) -> Result<Vec<Round>, StrategyError> {
    let mut rounds = Vec::with_capacity(picks.len());
    for &b in picks {
        let offer = sigma.offer(&View { spec, history: &rounds })?;
        rounds.push(Round { offer, b: Some(b) });
    }
    Ok(rounds)
}

/// Player I's q-game strategy `σ` turned into a strategy for the sequence
/// game `(G₁)(τ*, ¬L_x)`.
pub fn q_to_wtilde(q_spec: &GameSpec, sigma: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    let space = q_spec.space().clone();
    let target = GameSpec::wtilde_game(space.clone(), x)?;
    let q = q_spec.clone();
    let sigma = sigma.clone();
    let trace = move |view: &View| -> Result<OnionTrace<PointSet>, TransformError> {
        let picks: Vec<usize> = view.picks().collect();
        let sig = |prefix: &[usize]| -> Result<PointSet, TransformError> {
            let rounds = replay_offers(&q, &sigma, prefix)?;
            Ok(sigma.offer(&View { spec: &q, history: &rounds })?)
        };
        q_to_wtilde_trace(&space, &x, sig, finite_gdelta(&space, x), &picks)
    };
    let trace = std::sync::Arc::new(trace);
    let t2 = trace.clone();
    let strategy = Strategy::combinator_i(
        "q_to_wtilde",
        move |view| {
            let t = trace(view).map_err(to_strategy_error)?;
            Ok(*t.offers.last().expect("V_0 always exists"))
        },
        // the next offer depends on S only through σ's table, on V_{n-1} and on x_{n-1}
        move |view| {
            let last = view.history.last().and_then(|r| r.b);
            match t2(&View { spec: view.spec, history: &view.history[..view.history.len().saturating_sub(1)] }) {
                Ok(t) if last.is_some() => state_hash(&(t.offers.last().copied(), last)),
                Ok(_) => 0,
                Err(e) => state_hash(&e.to_string()),
            }
        },
    );
    Ok((target, strategy))
}

/// Player II's sequence-game strategy `μ` turned into a q-game strategy.
pub fn ii_transfer(wt_spec: &GameSpec, mu: &Strategy, x: usize) -> Result<(GameSpec, Strategy), TransformError> {
    let space = wt_spec.space().clone();
    let target = GameSpec::q_game(space.clone(), x)?;
    let w = wt_spec.clone();
    let mu = mu.clone();
    let picks_for = move |offers: &[PointSet]| -> Result<Vec<usize>, TransformError> {
        let mu_fn = |shrunk: &[PointSet], earlier: &[usize]| -> Result<usize, TransformError> {
            let rounds: Vec<Round> = shrunk
                .iter()
                .zip(earlier)
                .map(|(&offer, &b)| Round { offer, b: Some(b) })
                .collect();
            Ok(mu.pick(&View { spec: &w, history: &rounds }, *shrunk.last().expect("nonempty"))?)
        };
        ii_transfer_picks(&space, &x, mu_fn, finite_gdelta(&space, x), offers)
    };
    let picks_for = std::sync::Arc::new(picks_for);
    let p2 = picks_for.clone();
    let strategy = Strategy::combinator_ii(
        "II_transfer",
        move |view, offer| {
            let mut offers: Vec<PointSet> = view.offers().collect();
            offers.push(offer);
            let picks = picks_for(&offers).map_err(to_strategy_error)?;
            Ok(*picks.last().expect("one pick per offer"))
        },
        move |view| {
            let offers: Vec<PointSet> = view.offers().collect();
            match p2(&offers) {
                Ok(p) => state_hash(&(offers.last().copied(), p.last().copied())),
                Err(e) => state_hash(&e.to_string()),
            }
        },
    );
    Ok((target, strategy))
}

/// Finite form of the schedule: `witness` is repeated cyclically and the
/// space must be regular.
pub fn s1_onion_witness(
    space: &FiniteSpace,
    x: usize,
    witness: &[PointSet],
    len: usize,
) -> Result<Vec<PointSet>, TransformError> {
    if !space.separation_axioms().regular {
        return Err(TransformError::NotRegular);
    }
    if witness.is_empty() {
        return Err(TransformError::Precondition("empty witness schedule".into()));
    }
    s1_onion_schedule(space, &x, |n| witness[n % witness.len()], finite_gdelta(space, x), len)
}
