use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use topogame::game::{verify_strategy, GameSpec, Player, Strategy, StrategyError, VerifyFailure, RefereeError};
use topogame::harness::{
    diagram_dot, play, play_omega1, profile, profiles, space_id, to_json_pretty, verify_diagram, verify_duality,
    verify_transformers,
};
use topogame::principles::{s1_holds, s1_star_holds, seq_s1_fails};
use topogame::solver::solve;
use topogame::topology::{catalog, enumerate_canonical, enumerate_topologies, FamilyId, FiniteSpace, PointSet};
use topogame::transformers::{
    dual_i, dual_ii, dual_iii, dual_iv, frechet_refuter, ii_transfer, na_oo, pi_base_from_strategy, q_to_wtilde,
    TransformError,
};

use crate::{Command, Side};

/// A catalog name such as `chain:3`, or a path to a space file.
fn load_space(arg: &str) -> Result<(FiniteSpace, String)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let space: FiniteSpace = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
        let id = space_id(&space);
        Ok((space, id))
    } else {
        Ok((catalog(arg)?, arg.to_string()))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn check_point(space: &FiniteSpace, x: usize) -> Result<()> {
    if x >= space.n() {
        bail!("point {x} is outside a space with {} points", space.n());
    }
    Ok(())
}

pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Enumerate { nmax, canonical, out } => {
            let mut sizes = Vec::new();
            for n in 1..=nmax {
                let spaces: Vec<FiniteSpace> = if canonical {
                    enumerate_canonical(n)?
                } else {
                    enumerate_topologies(n)?.collect()
                };
                sizes.push(json!({ "n": n, "count": spaces.len(), "spaces": spaces }));
            }
            emit(&out, &to_json_pretty(&sizes))?;
            Ok(true)
        }
        Command::Profile { space, point, out } => {
            let (s, name) = load_space(&space)?;
            check_point(&s, point)?;
            let p = profile(&s, point, &name)?;
            emit(&out, &to_json_pretty(&p))?;
            Ok(p.all_true() && p.all_validated())
        }
        Command::Solve { space, point, game, out } => {
            let (s, _) = load_space(&space)?;
            check_point(&s, point)?;
            let spec = GameSpec::named(&game, s, point)?;
            let r = solve(&spec);
            let check = verify_strategy(&spec, r.winning_strategy());
            println!(
                "{}",
                to_json_pretty(&json!({
                    "game": spec.name(),
                    "winner": r.winner,
                    "vacuous": r.vacuous,
                    "positions": r.stats.positions,
                    "moves_examined": r.stats.moves_examined,
                    "verified": check.is_ok(),
                }))
            );
            if let Some(p) = &out {
                fs::write(p, r.winning_strategy().to_json()?)?;
            }
            Ok(check.is_ok())
        }
        Command::Principle { space, kind, a, b, point, out } => {
            let (s, _) = load_space(&space)?;
            let a: FamilyId = a.parse()?;
            let b: FamilyId = b.parse()?;
            match kind.as_str() {
                "s1" => {
                    let v = s1_holds(&s, &a, &b)?;
                    emit(&out, &to_json_pretty(&v))?;
                }
                "s1star" => {
                    let holds = s1_star_holds(&s, &a, &b)?;
                    emit(&out, &to_json_pretty(&json!({ "holds": holds })))?;
                }
                "seq" => {
                    check_point(&s, point)?;
                    let r = seq_s1_fails(&s, point)?;
                    emit(&out, &to_json_pretty(&r))?;
                    return Ok(r.equivalence_holds());
                }
                other => bail!("unknown principle kind {other}; expected s1, s1star or seq"),
            }
            Ok(true)
        }
        Command::Transform { kind, space, point, strategy, schedule, verify, out } => {
            let (s, _) = load_space(&space)?;
            check_point(&s, point)?;
            transform(&kind, s, point, strategy.as_deref(), schedule.as_deref(), verify != "none", &out)
        }
        Command::VerifyDuality { nmax, out } => {
            let r = verify_duality(nmax)?;
            eprintln!("duality: {:.2}% of {} instances agree", r.percent(), r.rows.len());
            emit(&out, &to_json_pretty(&r))?;
            Ok(r.all_agree_or_diagnosed())
        }
        Command::VerifyDiagram { nmax, out } => {
            let ps = profiles(nmax)?;
            let r = verify_diagram(&ps);
            eprintln!("diagram: {} profiles, {} violations", r.profiles, r.violations.len());
            emit(&out, &to_json_pretty(&r))?;
            Ok(r.clean())
        }
        Command::VerifyTransformers { nmax, seed, out } => {
            let r = verify_transformers(nmax, seed)?;
            for row in &r.rows {
                eprintln!(
                    "{:28} passed {:5}/{:<5} vacuous {:5} precondition {:5}",
                    row.combinator, row.passed, row.validated, row.vacuous, row.precondition_failures
                );
            }
            emit(&out, &to_json_pretty(&r))?;
            Ok(r.all_pass())
        }
        Command::Play { space, point, game, side, horizon, out } => {
            let stdin = io::stdin();
            let mut input = stdin.lock();
            let mut output = io::stdout();
            if space.eq_ignore_ascii_case("omega1") {
                let t = play_omega1(horizon, &mut input, &mut output)?;
                if let Some(p) = &out {
                    fs::write(p, serde_json::to_string_pretty(&t)?)?;
                }
                return Ok(true);
            }
            let (s, _) = load_space(&space)?;
            check_point(&s, point)?;
            let spec = GameSpec::named(&game, s, point)?;
            let human = match side {
                Side::I => Player::I,
                Side::II => Player::II,
            };
            let machine = machine_strategy(&spec, human.opponent());
            let t = play(&spec, human, &machine, horizon, &mut input, &mut output)?;
            if let Some(p) = &out {
                fs::write(p, t.to_json())?;
            }
            Ok(true)
        }
        Command::Report { nmax, seed, out } => {
            fs::create_dir_all(&out)?;
            let ps = profiles(nmax)?;
            let diagram = verify_diagram(&ps);
            let duality = verify_duality(nmax)?;
            let transformers = verify_transformers(nmax, seed)?;
            fs::write(out.join("diagram.dot"), diagram_dot(&ps))?;
            fs::write(out.join("diagram.json"), to_json_pretty(&diagram))?;
            fs::write(out.join("duality.json"), to_json_pretty(&duality))?;
            fs::write(out.join("transformers.json"), to_json_pretty(&transformers))?;
            eprintln!("wrote report to {}", out.display());
            Ok(diagram.clean() && duality.all_agree_or_diagnosed() && transformers.all_pass())
        }
    }
}

/// The solver's strategy when it wins for `side`; otherwise the first legal
/// move, so the human can still play.
fn machine_strategy(spec: &GameSpec, side: Player) -> Strategy {
    let r = solve(spec);
    if r.winner == side {
        return r.winning_strategy().clone();
    }
    match side {
        Player::I => Strategy::combinator_i(
            "first offer",
            |v| v.spec.moves().first().copied().ok_or(StrategyError::Combinator("no legal offer".into())),
            |_| 0,
        ),
        Player::II => Strategy::combinator_ii(
            "least pick",
            |v, offer| {
                v.spec
                    .legal_picks(offer, v.picked())
                    .first()
                    .ok_or(StrategyError::Combinator("no legal pick".into()))
            },
            |_| 0,
        ),
    }
}

fn input_strategy(spec: &GameSpec, role: Player, file: Option<&Path>) -> Result<Option<Strategy>> {
    if let Some(f) = file {
        let s = Strategy::from_json(&fs::read_to_string(f)?)?;
        if s.owner() != role {
            bail!("the strategy file is for Player {}, the combinator needs Player {role}", s.owner());
        }
        return Ok(Some(s));
    }
    let r = solve(spec);
    Ok((r.winner == role).then(|| r.winning_strategy().clone()))
}

fn parse_schedule(text: &str, n: usize) -> Result<Vec<PointSet>> {
    text.split(';')
        .map(|set| {
            set.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok().filter(|&p| p < n).ok_or_else(|| anyhow!("bad point {t}")))
                .collect::<Result<PointSet>>()
        })
        .collect()
}

fn transform(
    kind: &str,
    space: FiniteSpace,
    x: usize,
    file: Option<&Path>,
    schedule: Option<&str>,
    exhaustive: bool,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let q = GameSpec::q_game(space.clone(), x)?;
    let d = GameSpec::dual_game(space.clone(), x)?;
    let wt = GameSpec::wtilde_game(space.clone(), x)?;
    let (source, role) = match kind {
        "dual_i" | "na_oo" | "q_to_wtilde" => (&q, Player::I),
        "dual_ii" => (&d, Player::I),
        "dual_iii" => (&q, Player::II),
        "dual_iv" => (&d, Player::II),
        "II_transfer" => (&wt, Player::II),
        "pi_base" => (&wt, Player::I),
        "frechet_refuter" => {
            let f = match schedule {
                Some(t) => parse_schedule(t, space.n())?,
                None => vec![space.min_nbhd(x).without(x)],
            };
            return frechet(&space, x, &f, out);
        }
        other => bail!("unknown combinator {other}"),
    };
    let Some(input) = input_strategy(source, role, file)? else {
        emit(out, &to_json_pretty(&json!({ "kind": kind, "result": "vacuous",
            "detail": format!("Player {role} has no winning strategy in {}", source.name()) })))?;
        return Ok(true);
    };
    if kind == "pi_base" {
        let r = pi_base_from_strategy(&wt, &input, x, space.n() + 1)?;
        emit(out, &to_json_pretty(&r))?;
        return Ok(r.is_pi_base);
    }
    let built = match kind {
        "dual_i" => dual_i(&q, &input, x),
        "na_oo" => na_oo(&q, &input, x),
        "q_to_wtilde" => q_to_wtilde(&q, &input, x),
        "dual_ii" => dual_ii(&d, &input, x),
        "dual_iii" => dual_iii(&q, &input, x),
        "dual_iv" => dual_iv(&d, &input, x),
        _ => ii_transfer(&wt, &input, x),
    };
    let (target, strategy) = match built {
        Ok(b) => b,
        Err(e @ (TransformError::Separation { .. } | TransformError::NotRegular | TransformError::Precondition(_))) => {
            emit(out, &to_json_pretty(&json!({ "kind": kind, "result": "precondition", "detail": e.to_string() })))?;
            return Ok(true);
        }
        Err(e) => return Err(e.into()),
    };
    if !exhaustive {
        emit(out, &to_json_pretty(&json!({ "kind": kind, "game": target.name(), "result": "built" })))?;
        return Ok(true);
    }
    let (result, detail, counterexample, ok) = match verify_strategy(&target, &strategy) {
        Ok(r) => ("pass", format!("{} positions checked", r.nodes), None, true),
        Err(VerifyFailure::Move(RefereeError::Strategy { source: StrategyError::Precondition(p), .. })) => {
            ("precondition", p, None, true)
        }
        Err(VerifyFailure::Lost(t)) => ("lost", "an adversary beats the strategy".to_string(), Some(t), false),
        Err(e) => ("error", e.to_string(), None, false),
    };
    emit(out, &to_json_pretty(&json!({
        "kind": kind, "game": target.name(), "result": result, "detail": detail, "counterexample": counterexample,
    })))?;
    Ok(ok)
}

fn frechet(space: &FiniteSpace, x: usize, schedule: &[PointSet], out: &Option<PathBuf>) -> Result<bool> {
    let (spec, s) = match frechet_refuter(space, x, schedule) {
        Ok(b) => b,
        Err(TransformError::Precondition(p)) => {
            emit(out, &to_json_pretty(&json!({ "kind": "frechet_refuter", "result": "precondition", "detail": p })))?;
            return Ok(true);
        }
        Err(e) => return Err(e.into()),
    };
    match verify_strategy(&spec, &s) {
        Err(VerifyFailure::Lost(t)) => {
            emit(out, &to_json_pretty(&json!({
                "kind": "frechet_refuter", "game": spec.name(), "result": "refuted",
                "detail": "a losing play selects from the schedule and converges", "counterexample": t,
            })))?;
            Ok(true)
        }
        other => {
            emit(out, &to_json_pretty(&json!({
                "kind": "frechet_refuter", "result": "unexpected", "detail": format!("{other:?}"),
            })))?;
            Ok(false)
        }
    }
}
