use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::spec::{GameSpec, Mode, Player};
use super::transcript::{picked_set, Round};
use crate::topology::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("a Player {owner} strategy was asked for a Player {asked} move")]
    WrongOwner { owner: Player, asked: Player },
    #[error("no table entry for S = {s}")]
    NoEntry { s: PointSet },
    #[error("no table entry for S = {s}, offer {offer}")]
    NoPickEntry { s: PointSet, offer: PointSet },
    #[error("scripted strategy ran out of moves at step {0}")]
    ScriptExhausted(usize),
    #[error("scripted move {0} has the wrong kind for this player")]
    ScriptKind(usize),
    #[error("{0}")]
    Combinator(String),
    /// A hypothesis of the construction fails on this space.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bad strategy file: {0}")]
    File(String),
}

/// What a strategy sees: the spec and the innings played so far.
#[derive(Clone, Copy)]
pub struct View<'a> {
    pub spec: &'a GameSpec,
    pub history: &'a [Round],
}

impl<'a> View<'a> {
    pub fn picked(&self) -> PointSet {
        picked_set(self.history)
    }

    pub fn picks(&self) -> impl Iterator<Item = usize> + 'a {
        self.history.iter().filter_map(|r| r.b)
    }

    pub fn offers(&self) -> impl Iterator<Item = PointSet> + 'a {
        self.history.iter().map(|r| r.offer)
    }

    /// The key positional tables are indexed by.
    pub fn position(&self) -> PointSet {
        match self.spec.mode() {
            Mode::Set => self.picked(),
            Mode::Sequence => PointSet::EMPTY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Offer(PointSet),
    Pick(usize),
}

type OfferFn = dyn Fn(&View) -> Result<PointSet, StrategyError> + Send + Sync;
type PickFn = dyn Fn(&View, PointSet) -> Result<usize, StrategyError> + Send + Sync;
type KeyFn = dyn Fn(&View) -> u64 + Send + Sync;

/// A strategy given by closures. Its behaviour must depend on the history
/// only through the accumulated set and `key`; the exhaustive verifier
/// relies on this.
#[derive(Clone)]
pub struct Combinator {
    pub label: String,
    offer: Option<Arc<OfferFn>>,
    pick: Option<Arc<PickFn>>,
    key: Arc<KeyFn>,
}

#[derive(Clone)]
pub enum Body {
    /// Player I: accumulated set ↦ offer.
    OfferTable(BTreeMap<PointSet, PointSet>),
    /// Player II: (accumulated set, offer) ↦ pick.
    PickTable(BTreeMap<(PointSet, PointSet), usize>),
    /// A fixed list of moves, repeated from `loop_from` once exhausted.
    Script { moves: Vec<Move>, loop_from: Option<usize> },
    Combinator(Combinator),
}

#[derive(Clone)]
pub struct Strategy {
    owner: Player,
    body: Body,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match &self.body {
            Body::OfferTable(t) => format!("offer table ({} entries)", t.len()),
            Body::PickTable(t) => format!("pick table ({} entries)", t.len()),
            Body::Script { moves, loop_from } => format!("script {moves:?} loop {loop_from:?}"),
            Body::Combinator(c) => format!("combinator {}", c.label),
        };
        write!(f, "Strategy({}, {body})", self.owner)
    }
}

/// Stable hash for combinator state keys.
pub fn state_hash<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

impl Strategy {
    pub fn offer_table(table: BTreeMap<PointSet, PointSet>) -> Self {
        Strategy { owner: Player::I, body: Body::OfferTable(table) }
    }

    pub fn pick_table(table: BTreeMap<(PointSet, PointSet), usize>) -> Self {
        Strategy { owner: Player::II, body: Body::PickTable(table) }
    }

    /// Player I offering the same set at every position.
    pub fn constant_offer(a: PointSet) -> Self {
        Self::scripted(Player::I, vec![Move::Offer(a)], Some(0))
    }

    pub fn scripted(owner: Player, moves: Vec<Move>, loop_from: Option<usize>) -> Self {
        Strategy { owner, body: Body::Script { moves, loop_from } }
    }

    pub fn combinator_i<O, K>(label: impl Into<String>, offer: O, key: K) -> Self
    where
        O: Fn(&View) -> Result<PointSet, StrategyError> + Send + Sync + 'static,
        K: Fn(&View) -> u64 + Send + Sync + 'static,
    {
        Strategy {
            owner: Player::I,
            body: Body::Combinator(Combinator {
                label: label.into(),
                offer: Some(Arc::new(offer)),
                pick: None,
                key: Arc::new(key),
            }),
        }
    }

    pub fn combinator_ii<P, K>(label: impl Into<String>, pick: P, key: K) -> Self
    where
        P: Fn(&View, PointSet) -> Result<usize, StrategyError> + Send + Sync + 'static,
        K: Fn(&View) -> u64 + Send + Sync + 'static,
    {
        Strategy {
            owner: Player::II,
            body: Body::Combinator(Combinator {
                label: label.into(),
                offer: None,
                pick: Some(Arc::new(pick)),
                key: Arc::new(key),
            }),
        }
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    fn script_index(moves: usize, loop_from: Option<usize>, step: usize) -> Result<usize, StrategyError> {
        if step < moves {
            return Ok(step);
        }
        match loop_from {
            Some(l) if l < moves => Ok(l + (step - l) % (moves - l)),
            _ => Err(StrategyError::ScriptExhausted(step)),
        }
    }

    pub fn offer(&self, view: &View) -> Result<PointSet, StrategyError> {
        if self.owner != Player::I {
            return Err(StrategyError::WrongOwner { owner: self.owner, asked: Player::I });
        }
        match &self.body {
            Body::OfferTable(t) => {
                let s = view.position();
                t.get(&s).copied().ok_or(StrategyError::NoEntry { s })
            }
            Body::Script { moves, loop_from } => {
                let i = Self::script_index(moves.len(), *loop_from, view.history.len())?;
                match moves[i] {
                    Move::Offer(a) => Ok(a),
                    Move::Pick(_) => Err(StrategyError::ScriptKind(i)),
                }
            }
            Body::Combinator(c) => match &c.offer {
                Some(f) => f(view),
                None => Err(StrategyError::WrongOwner { owner: Player::II, asked: Player::I }),
            },
            Body::PickTable(_) => unreachable!("pick tables belong to Player II"),
        }
    }

    pub fn pick(&self, view: &View, offer: PointSet) -> Result<usize, StrategyError> {
        if self.owner != Player::II {
            return Err(StrategyError::WrongOwner { owner: self.owner, asked: Player::II });
        }
        match &self.body {
            Body::PickTable(t) => {
                let s = view.position();
                t.get(&(s, offer))
                    .copied()
                    .ok_or(StrategyError::NoPickEntry { s, offer })
            }
            Body::Script { moves, loop_from } => {
                let i = Self::script_index(moves.len(), *loop_from, view.history.len())?;
                match moves[i] {
                    Move::Pick(b) => Ok(b),
                    Move::Offer(_) => Err(StrategyError::ScriptKind(i)),
                }
            }
            Body::Combinator(c) => match &c.pick {
                Some(f) => f(view, offer),
                None => Err(StrategyError::WrongOwner { owner: Player::I, asked: Player::II }),
            },
            Body::OfferTable(_) => unreachable!("offer tables belong to Player I"),
        }
    }

    /// Internal state beyond the accumulated set. Tables have none.
    pub fn state_key(&self, view: &View) -> u64 {
        match &self.body {
            Body::OfferTable(_) | Body::PickTable(_) => 0,
            Body::Script { moves, loop_from } => {
                Self::script_index(moves.len(), *loop_from, view.history.len())
                    .unwrap_or(moves.len()) as u64
            }
            Body::Combinator(c) => (c.key)(view),
        }
    }

    pub fn is_positional(&self) -> bool {
        matches!(self.body, Body::OfferTable(_) | Body::PickTable(_))
    }

    /// Serializes a table strategy; other bodies have no file form.
    pub fn to_file(&self) -> Result<StrategyFile, StrategyError> {
        let positions = match &self.body {
            Body::OfferTable(t) => t
                .iter()
                .map(|(&s, &a)| PositionEntry { s, offer: None, mv: MoveValue::Set(a) })
                .collect(),
            Body::PickTable(t) => t
                .iter()
                .map(|(&(s, a), &b)| PositionEntry { s, offer: Some(a), mv: MoveValue::Point(b) })
                .collect(),
            _ => {
                return Err(StrategyError::File(
                    "only positional strategies can be written".into(),
                ))
            }
        };
        Ok(StrategyFile { positions })
    }

    pub fn from_file(file: &StrategyFile) -> Result<Strategy, StrategyError> {
        let first = file
            .positions
            .first()
            .ok_or_else(|| StrategyError::File("empty position list".into()))?;
        match first.mv {
            MoveValue::Set(_) => {
                let mut t = BTreeMap::new();
                for e in &file.positions {
                    match e.mv {
                        MoveValue::Set(a) if e.offer.is_none() => {
                            t.insert(e.s, a);
                        }
                        _ => return Err(StrategyError::File("mixed Player I/II entries".into())),
                    }
                }
                Ok(Strategy::offer_table(t))
            }
            MoveValue::Point(_) => {
                let mut t = BTreeMap::new();
                for e in &file.positions {
                    match (e.mv, e.offer) {
                        (MoveValue::Point(b), Some(a)) => {
                            t.insert((e.s, a), b);
                        }
                        _ => {
                            return Err(StrategyError::File(
                                "Player II entries need an offer and a point".into(),
                            ))
                        }
                    }
                }
                Ok(Strategy::pick_table(t))
            }
        }
    }

    pub fn to_json(&self) -> Result<String, StrategyError> {
        Ok(serde_json::to_string(&self.to_file()?).expect("strategy files serialize"))
    }

    pub fn from_json(text: &str) -> Result<Strategy, StrategyError> {
        let file: StrategyFile =
            serde_json::from_str(text).map_err(|e| StrategyError::File(e.to_string()))?;
        Self::from_file(&file)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MoveValue {
    Set(PointSet),
    Point(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionEntry {
    #[serde(rename = "S")]
    pub s: PointSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offer: Option<PointSet>,
    #[serde(rename = "move")]
    pub mv: MoveValue,
}

/// `{"positions":[{"S":[...],"move":[...]}]}`; Player II entries also
/// carry `"offer"` and an integer move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyFile {
    pub positions: Vec<PositionEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::sierpinski;

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    #[test]
    fn lasso_script_repeats_tail() {
        let g = GameSpec::q_game(sierpinski(), 0).unwrap();
        let s = Strategy::scripted(Player::II, vec![Move::Pick(0), Move::Pick(1)], Some(1));
        let r = Round { offer: ps(&[0, 1]), b: Some(0) };
        let hist = [r, r, r];
        for (len, want) in [(0, 0), (1, 1), (3, 1)] {
            let v = View { spec: &g, history: &hist[..len] };
            assert_eq!(s.pick(&v, ps(&[0, 1])).unwrap(), want);
        }
        let once = Strategy::scripted(Player::II, vec![Move::Pick(0)], None);
        let v = View { spec: &g, history: &hist[..1] };
        assert_eq!(once.pick(&v, ps(&[0, 1])), Err(StrategyError::ScriptExhausted(1)));
    }

    #[test]
    fn owner_is_enforced() {
        let g = GameSpec::q_game(sierpinski(), 0).unwrap();
        let v = View { spec: &g, history: &[] };
        let s = Strategy::constant_offer(ps(&[0, 1]));
        assert!(matches!(s.pick(&v, ps(&[0])), Err(StrategyError::WrongOwner { .. })));
    }

    #[test]
    fn table_json_round_trip() {
        let mut t = BTreeMap::new();
        t.insert(PointSet::EMPTY, ps(&[0, 1]));
        t.insert(ps(&[0]), ps(&[0, 1]));
        let s = Strategy::offer_table(t);
        let json = s.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"positions":[{"S":[],"move":[0,1]},{"S":[0],"move":[0,1]}]}"#
        );
        let back = Strategy::from_json(&json).unwrap();
        assert_eq!(back.to_json().unwrap(), json);

        let mut p = BTreeMap::new();
        p.insert((PointSet::EMPTY, ps(&[1])), 1usize);
        let s = Strategy::pick_table(p);
        let json = s.to_json().unwrap();
        assert_eq!(json, r#"{"positions":[{"S":[],"offer":[1],"move":1}]}"#);
        assert_eq!(Strategy::from_json(&json).unwrap().owner(), Player::II);
    }
}
