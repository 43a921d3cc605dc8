//! Line-oriented play against a machine strategy.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::game::{judge, GameSpec, Player, Round, Strategy, StrategyError, Terminal, Transcript, View};
use crate::ordinal::{omega1_strategy_i, Ordinal, OrdinalError, OrdinalMove, OrdinalTranscript};
use crate::topology::PointSet;

#[derive(Debug, Error)]
pub enum PlayError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("input ended before the play finished")]
    Eof,
    #[error("the machine strategy belongs to Player {0}, the human's side")]
    SameSide(Player),
    #[error("machine strategy failed: {0}")]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

fn read_line<R: BufRead>(input: &mut R) -> Result<String, PlayError> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Err(PlayError::Eof);
    }
    Ok(line.trim().to_string())
}

/// Accepts `0,1`, `{0,1}`, `[0, 1]` or `0 1`.
fn parse_set(line: &str, n: usize) -> Option<PointSet> {
    let inner = line.trim_matches(|c: char| c == '{' || c == '}' || c == '[' || c == ']' || c.is_whitespace());
    let mut set = PointSet::EMPTY;
    for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let p: usize = tok.parse().ok()?;
        if p >= n {
            return None;
        }
        set = set.with(p);
    }
    Some(set)
}

/// Plays `spec` with the human on side `human` and `machine` on the other,
/// until someone is stuck or `horizon` innings pass. Illegal input is
/// reported and asked for again; the position does not change.
pub fn play<R: BufRead, W: Write>(
    spec: &GameSpec,
    human: Player,
    machine: &Strategy,
    horizon: usize,
    input: &mut R,
    out: &mut W,
) -> Result<Transcript, PlayError> {
    if machine.owner() == human {
        return Err(PlayError::SameSide(human));
    }
    let n = spec.space().n();
    let mut rounds: Vec<Round> = Vec::new();
    let mut terminal = Terminal::Horizon;
    writeln!(out, "game {}; you are Player {human}", spec.name())?;
    for inning in 0..horizon {
        let picked: PointSet = rounds.iter().filter_map(|r| r.b).collect();
        if spec.moves().is_empty() {
            terminal = Terminal::StuckI;
            break;
        }
        let offer = if human == Player::I {
            loop {
                write!(out, "inning {inning}, picked {picked}. offer: ")?;
                out.flush()?;
                match parse_set(&read_line(input)?, n) {
                    Some(a) if spec.is_move(a) => break a,
                    _ => writeln!(out, "not a legal offer; legal offers: {:?}", spec.moves())?,
                }
            }
        } else {
            let a = machine.offer(&View { spec, history: &rounds })?;
            writeln!(out, "inning {inning}: Player I offers {a}")?;
            a
        };
        let legal = spec.legal_picks(offer, picked);
        if legal.is_empty() {
            rounds.push(Round { offer, b: None });
            terminal = Terminal::StuckII;
            break;
        }
        let b = if human == Player::II {
            loop {
                write!(out, "pick from {legal}: ")?;
                out.flush()?;
                match read_line(input)?.parse::<usize>() {
                    Ok(b) if legal.contains(b) => break b,
                    _ => writeln!(out, "not a legal pick")?,
                }
            }
        } else {
            let b = machine.pick(&View { spec, history: &rounds }, offer)?;
            writeln!(out, "Player II picks {b}")?;
            b
        };
        rounds.push(Round { offer, b: Some(b) });
    }
    let winner = judge(spec, &rounds, terminal, None);
    writeln!(out, "{terminal}: Player {winner} wins")?;
    Ok(Transcript { moves: rounds, terminal, cycle_start: None, winner })
}

/// The human plays Player II on `[0, ω₁]` against the example strategy.
pub fn play_omega1<R: BufRead, W: Write>(
    horizon: usize,
    input: &mut R,
    out: &mut W,
) -> Result<OrdinalTranscript, PlayError> {
    let mut moves: Vec<OrdinalMove> = Vec::new();
    writeln!(out, "[0,W1] at W1; you are Player II; ordinals like 5, w, w^2*3+w*1+4")?;
    for inning in 0..horizon {
        let picks: Vec<Ordinal> = moves.iter().map(|m| m.b.clone()).collect();
        let offer = omega1_strategy_i(&picks)?;
        let b = loop {
            write!(out, "inning {inning}: Player I offers {offer}. pick: ")?;
            out.flush()?;
            match read_line(input)?.parse::<Ordinal>() {
                Ok(b) if b.is_omega1() => writeln!(out, "W1 itself is not an allowed pick")?,
                Ok(b) if offer.contains(&b) => break b,
                _ => writeln!(out, "not a legal pick")?,
            }
        };
        moves.push(OrdinalMove { offer, b });
    }
    writeln!(out, "horizon reached after {horizon} innings")?;
    Ok(OrdinalTranscript { moves, terminal: "horizon", winner: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;
    use crate::topology::sierpinski;

    #[test]
    fn human_ii_against_q_strategy() {
        let spec = GameSpec::q_game(sierpinski(), 0).unwrap();
        let s = solve(&spec).winning_strategy().clone();
        // "7" and "x" are rejected, then both points, then II is stuck
        let mut input = io::Cursor::new("7\nx\n0\n1\n");
        let mut out = Vec::new();
        let t = play(&spec, Player::II, &s, 10, &mut input, &mut out).unwrap();
        assert_eq!(t.winner, Player::I);
        assert_eq!(t.terminal, Terminal::StuckII);
        assert_eq!(t.picks().collect::<Vec<_>>(), vec![0, 1]);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.matches("not a legal pick").count(), 2);
    }

    #[test]
    fn human_i_sets_parse() {
        assert_eq!(parse_set("{0, 1}", 2), Some(PointSet::from_points([0, 1])));
        assert_eq!(parse_set("[1]", 2), Some(PointSet::singleton(1)));
        assert_eq!(parse_set("2", 2), None);
    }

    #[test]
    fn omega1_prompted() {
        let mut input = io::Cursor::new("W1\n0\nw\n3\nw*2\n");
        let mut out = Vec::new();
        let t = play_omega1(3, &mut input, &mut out).unwrap();
        let picks = t.picks();
        assert!(picks.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(picks.len(), 3);
    }
}
