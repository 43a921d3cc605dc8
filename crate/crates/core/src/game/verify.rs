//! Exhaustive check that a strategy wins against every adversary.
//!
//! Positions are `(accumulated set, strategy key)`. Every infinite play ends
//! in a cycle of this finite graph, so a strategy wins iff no reachable
//! terminal or cycle is losing for it.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, EdgeIndex, NodeIndex};
use petgraph::visit::EdgeRef;
use thiserror::Error;

use super::referee::RefereeError;
use super::spec::{GameSpec, Mode, Player};
use super::strategy::{Strategy, View};
use super::transcript::{judge, picked_set, Round, Terminal, Transcript};
use crate::topology::PointSet;

/// Positions explored before giving up.
pub const NODE_LIMIT: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("strategy loses: {}", .0.to_json())]
    Lost(Transcript),
    #[error(transparent)]
    Move(#[from] RefereeError),
    #[error("more than {0} positions")]
    TooLarge(usize),
}

impl VerifyFailure {
    pub fn counterexample(&self) -> Option<&Transcript> {
        match self {
            VerifyFailure::Lost(t) => Some(t),
            _ => None,
        }
    }
}

struct Explorer<'a> {
    spec: &'a GameSpec,
    strategy: &'a Strategy,
    graph: DiGraph<PointSet, (Round, bool)>,
    index: HashMap<(PointSet, u64), NodeIndex>,
    paths: Vec<Vec<Round>>,
    queue: VecDeque<NodeIndex>,
}

impl<'a> Explorer<'a> {
    fn node(&mut self, history: Vec<Round>) -> Result<NodeIndex, VerifyFailure> {
        let s = picked_set(&history);
        let key = self.strategy.state_key(&View { spec: self.spec, history: &history });
        if let Some(&ix) = self.index.get(&(s, key)) {
            return Ok(ix);
        }
        if self.paths.len() >= NODE_LIMIT {
            return Err(VerifyFailure::TooLarge(NODE_LIMIT));
        }
        let ix = self.graph.add_node(s);
        self.index.insert((s, key), ix);
        self.paths.push(history);
        self.queue.push_back(ix);
        Ok(ix)
    }

    fn lost(&self, mut moves: Vec<Round>, terminal: Terminal, cycle_start: Option<usize>) -> VerifyFailure {
        let winner = judge(self.spec, &moves, terminal, cycle_start);
        debug_assert_ne!(winner, self.strategy.owner());
        moves.shrink_to_fit();
        VerifyFailure::Lost(Transcript { moves, terminal, cycle_start, winner })
    }

    fn strategy_error(&self, history: &[Round], source: super::strategy::StrategyError) -> VerifyFailure {
        VerifyFailure::Move(RefereeError::Strategy {
            player: self.strategy.owner(),
            inning: history.len(),
            source,
            history: history.to_vec(),
        })
    }

    fn illegal(&self, history: &[Round], detail: String) -> VerifyFailure {
        VerifyFailure::Move(RefereeError::Illegal {
            offender: self.strategy.owner(),
            inning: history.len(),
            detail,
            history: history.to_vec(),
        })
    }

    fn expand(&mut self, ix: NodeIndex) -> Result<(), VerifyFailure> {
        let spec = self.spec;
        let history = self.paths[ix.index()].clone();
        let view = View { spec, history: &history };
        let s = picked_set(&history);
        let target = spec.target();
        let mut edges = Vec::new();
        match self.strategy.owner() {
            Player::I => {
                if spec.moves().is_empty() {
                    return Err(self.lost(history, Terminal::StuckI, None));
                }
                let offer = self
                    .strategy
                    .offer(&view)
                    .map_err(|e| self.strategy_error(&history, e))?;
                if !spec.is_move(offer) {
                    return Err(self.illegal(&history, format!("{offer} is not in {}", spec.selector())));
                }
                let legal = spec.legal_picks(offer, s);
                if legal.is_empty() {
                    let mut moves = history.clone();
                    moves.push(Round { offer, b: None });
                    if judge(spec, &moves, Terminal::StuckII, None) != Player::I {
                        return Err(self.lost(moves, Terminal::StuckII, None));
                    }
                }
                for b in legal.iter() {
                    edges.push(Round { offer, b: Some(b) });
                }
            }
            Player::II => {
                for &offer in spec.moves() {
                    let legal = spec.legal_picks(offer, s);
                    if legal.is_empty() {
                        let mut moves = history.clone();
                        moves.push(Round { offer, b: None });
                        if judge(spec, &moves, Terminal::StuckII, None) != Player::II {
                            return Err(self.lost(moves, Terminal::StuckII, None));
                        }
                        continue;
                    }
                    let b = self
                        .strategy
                        .pick(&view, offer)
                        .map_err(|e| self.strategy_error(&history, e))?;
                    if !legal.contains(b) {
                        return Err(self.illegal(&history, format!("{b} is not a legal pick from {offer}")));
                    }
                    edges.push(Round { offer, b: Some(b) });
                }
            }
        }
        for round in edges {
            let mut next = history.clone();
            next.push(round);
            let to = self.node(next)?;
            let accepting = target.is_some_and(|t| round.b.is_some_and(|b| t.contains(b)));
            self.graph.add_edge(ix, to, (round, accepting));
        }
        Ok(())
    }

    /// A cycle through `start` using only edges allowed by `keep` and staying
    /// inside `members`, optionally forced to begin with `first`.
    fn cycle_rounds(
        &self,
        start: NodeIndex,
        first: Option<EdgeIndex>,
        members: &[NodeIndex],
        keep: &dyn Fn(bool) -> bool,
    ) -> Vec<Round> {
        let inside: std::collections::HashSet<NodeIndex> = members.iter().copied().collect();
        let (mut prefix, from) = match first {
            Some(e) => {
                let (_, to) = self.graph.edge_endpoints(e).expect("edge exists");
                (vec![self.graph[e].0], to)
            }
            None => (Vec::new(), start),
        };
        if first.is_some() && from == start {
            return prefix;
        }
        // breadth-first search from `from` back to `start`
        let mut parent: HashMap<NodeIndex, (NodeIndex, Round)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut reached_start = false;
        while let Some(u) = queue.pop_front() {
            for e in self.graph.edges(u) {
                let (round, acc) = *e.weight();
                let v = e.target();
                if !keep(acc) || !inside.contains(&v) {
                    continue;
                }
                if v == start {
                    parent.insert(v, (u, round));
                    reached_start = true;
                    break;
                }
                if v != from && !parent.contains_key(&v) {
                    parent.insert(v, (u, round));
                    queue.push_back(v);
                }
            }
            if reached_start {
                break;
            }
        }
        assert!(reached_start, "cycle exists inside a strongly connected component");
        let mut back = Vec::new();
        let mut cur = start;
        loop {
            let (p, round) = parent[&cur];
            back.push(round);
            if p == from {
                break;
            }
            cur = p;
        }
        back.reverse();
        prefix.extend(back);
        prefix
    }

    fn lasso(&self, start: NodeIndex, cycle: Vec<Round>) -> VerifyFailure {
        let mut moves = self.paths[start.index()].clone();
        let cycle_start = moves.len();
        moves.extend(cycle);
        self.lost(moves, Terminal::Stabilized, Some(cycle_start))
    }

    fn has_cycle(&self, comp: &[NodeIndex], keep: &dyn Fn(bool) -> bool) -> bool {
        if comp.len() > 1 {
            return true;
        }
        self.graph
            .edges(comp[0])
            .any(|e| e.target() == comp[0] && keep(e.weight().1))
    }

    fn check_cycles(&self) -> Result<(), VerifyFailure> {
        let owner = self.strategy.owner();
        match (self.spec.mode(), owner) {
            (Mode::Set, _) => {
                for comp in tarjan_scc(&self.graph) {
                    if !self.has_cycle(&comp, &|_| true) {
                        continue;
                    }
                    let s = self.graph[comp[0]];
                    let ii_wins = self.spec.in_outcome(s);
                    if ii_wins == (owner == Player::I) {
                        let start = *comp.iter().min().expect("nonempty component");
                        let cycle = self.cycle_rounds(start, None, &comp, &|_| true);
                        return Err(self.lasso(start, cycle));
                    }
                }
            }
            (Mode::Sequence, Player::I) => {
                let quiet = self.graph.filter_map(|_, &s| Some(s), |_, &w| (!w.1).then_some(w));
                for comp in tarjan_scc(&quiet) {
                    let cyclic = comp.len() > 1
                        || quiet.edges(comp[0]).any(|e| e.target() == comp[0]);
                    if cyclic {
                        let start = *comp.iter().min().expect("nonempty component");
                        let cycle = self.cycle_rounds(start, None, &comp, &|acc| !acc);
                        return Err(self.lasso(start, cycle));
                    }
                }
            }
            (Mode::Sequence, Player::II) => {
                for comp in tarjan_scc(&self.graph) {
                    let inside: std::collections::HashSet<_> = comp.iter().copied().collect();
                    let hit = comp.iter().find_map(|&u| {
                        self.graph
                            .edges(u)
                            .find(|e| e.weight().1 && inside.contains(&e.target()))
                            .map(|e| (u, e.id()))
                    });
                    if let Some((u, e)) = hit {
                        let cycle = self.cycle_rounds(u, Some(e), &comp, &|_| true);
                        return Err(self.lasso(u, cycle));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks that `strategy` wins every play, whatever the opponent does.
/// Returns a lasso-shaped losing play otherwise.
pub fn verify_strategy(spec: &GameSpec, strategy: &Strategy) -> Result<VerifyReport, VerifyFailure> {
    let mut ex = Explorer {
        spec,
        strategy,
        graph: DiGraph::new(),
        index: HashMap::new(),
        paths: Vec::new(),
        queue: VecDeque::new(),
    };
    ex.node(Vec::new())?;
    while let Some(ix) = ex.queue.pop_front() {
        ex.expand(ix)?;
    }
    ex.check_cycles()?;
    Ok(VerifyReport {
        nodes: ex.graph.node_count(),
        edges: ex.graph.edge_count(),
    })
}
