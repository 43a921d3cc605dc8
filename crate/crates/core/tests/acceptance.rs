//! The eight acceptance criteria, one line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topogame::game::{GameSpec, Outcome, Player};
use topogame::harness::{profiles, verify_diagram, verify_duality, verify_transformers, instances, Property};
use topogame::ordinal::{check_prefix, random_pick, simulate_omega1, DEFAULT_HORIZON};
use topogame::principles::s1_holds;
use topogame::solver::{default_depth, oracle_game_tree, solve, solve_set_game};
use topogame::topology::{enumerate_topologies, FamilyId, FiniteSpace, PointSet};
use topogame::transformers::pi_base_from_strategy;

struct Line {
    ok: bool,
    detail: String,
}

fn report(id: usize, name: &str, started: Instant, line: Line) -> bool {
    println!(
        "criterion {id} [{}] {name}: {} ({:.1}s)",
        if line.ok { "PASS" } else { "FAIL" },
        line.detail,
        started.elapsed().as_secs_f64()
    );
    line.ok
}

fn random_space(rng: &mut ChaCha8Rng, all: &[Vec<FiniteSpace>]) -> FiniteSpace {
    let n = rng.gen_range(1..=4);
    all[n].choose(rng).expect("every size has a topology").clone()
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, min: usize, max: usize) -> Vec<PointSet> {
    let k = rng.gen_range(min..=max);
    (0..k).map(|_| PointSet::from_bits(rng.gen_range(1..(1u32 << n)))).collect()
}

fn solver_oracle_equivalence(all: &[Vec<FiniteSpace>]) -> Line {
    let start = Instant::now();
    let mut named = 0;
    let mut bad = Vec::new();
    for space in &all[1..=3].concat() {
        for x in space.points().filter(|&x| !space.is_isolated(x)) {
            for kind in ["qgame", "wgame", "dual", "csft"] {
                let g = GameSpec::named(kind, space.clone(), x).expect("named game");
                named += 1;
                if Ok(solve_set_game(&g).winner) != oracle_game_tree(&g, default_depth(&g)) {
                    bad.push(format!("{kind} x={x} {}", space.to_json()));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let random = 1000;
    for _ in 0..random {
        let space = random_space(&mut rng, all);
        let n = space.n();
        let sel = random_family(&mut rng, n, 1, 4);
        let goal: Vec<PointSet> = (0..rng.gen_range(0..=6))
            .map(|_| PointSet::from_bits(rng.gen_range(0..(1u32 << n))))
            .filter(|s| !s.is_empty())
            .collect();
        let injective = rng.gen_bool(0.5);
        let g = GameSpec::new(space, FamilyId::Explicit(sel), Outcome::Family(FamilyId::Explicit(goal)), injective)
            .expect("explicit spec");
        if Ok(solve_set_game(&g).winner) != oracle_game_tree(&g, default_depth(&g)) {
            bad.push(format!("random {g:?}"));
        }
    }
    let fast = start.elapsed() < Duration::from_secs(300);
    Line {
        ok: bad.is_empty() && fast,
        detail: format!("{named} named + {random} random instances, {} disagreements; first: {:?}", bad.len(), bad.first()),
    }
}

fn duality() -> Line {
    let start = Instant::now();
    let r = verify_duality(4).expect("duality sweep");
    let fast = start.elapsed() < Duration::from_secs(600);
    let exceptions = r.rows.len() - r.agreements;
    Line {
        ok: r.all_agree_or_diagnosed() && fast,
        detail: format!("{:.2}% agreement over {} instances, {exceptions} exceptions", r.percent(), r.rows.len()),
    }
}

fn implication_chain(all: &[Vec<FiniteSpace>]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut failing, mut ii_wins, mut broken) = (0, 0, Vec::new());
    let mut attempts = 0;
    while failing < 500 && attempts < 50_000 {
        attempts += 1;
        let space = random_space(&mut rng, all);
        let n = space.n();
        let a = FamilyId::Explicit(random_family(&mut rng, n, 1, 4));
        let b = FamilyId::Explicit(random_family(&mut rng, n, 0, 8));
        let g = GameSpec::new(space.clone(), a.clone(), Outcome::Family(b.clone()), false).expect("spec");
        let winner = solve(&g).winner;
        let holds = s1_holds(&space, &a, &b).expect("s1").holds;
        if !holds {
            failing += 1;
            if winner != Player::I {
                broken.push(format!("¬S1 but II wins: {g:?}"));
            }
        }
        if winner == Player::II {
            ii_wins += 1;
            if !holds {
                broken.push(format!("II wins but S1 fails: {g:?}"));
            }
        }
    }
    Line {
        ok: failing >= 500 && broken.is_empty(),
        detail: format!("{failing} failing instances all won by I, {ii_wins} II-wins all with S1; {} breaks", broken.len()),
    }
}

fn transformer_soundness() -> Line {
    let r = verify_transformers(4, 4).expect("transformer sweep");
    let summary: Vec<String> = r
        .rows
        .iter()
        .map(|row| {
            format!(
                "{} {}/{} (vacuous {}, precondition {})",
                row.combinator, row.passed, row.validated, row.vacuous, row.precondition_failures
            )
        })
        .collect();
    Line { ok: r.all_pass(), detail: summary.join("; ") }
}

fn omega1_prefixes() -> Line {
    let mut prefixes = 0;
    let mut bad = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = simulate_omega1(DEFAULT_HORIZON, |offer, _| random_pick(&mut rng, offer)).expect("legal play");
        let picks = t.picks();
        for k in 1..=picks.len() {
            prefixes += 1;
            if !check_prefix(&picks[..k]).holds() {
                bad += 1;
            }
        }
    }
    Line {
        ok: bad == 0 && prefixes == 100 * DEFAULT_HORIZON,
        detail: format!("{} of {prefixes} prefixes hold", prefixes - bad),
    }
}

fn pi_base() -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (id, space, x) in instances(5).expect("instances") {
        let g = GameSpec::wtilde_game(space.clone(), x).expect("spec");
        let r = solve(&g);
        if r.winner != Player::I {
            continue;
        }
        checked += 1;
        let rep = pi_base_from_strategy(&g, r.winning_strategy(), x, space.n() + 1).expect("I strategy");
        if !rep.is_pi_base {
            bad.push(format!("{id} x={x}"));
        }
    }
    Line {
        ok: bad.is_empty() && checked > 0,
        detail: format!("{} of {checked} extracted strategies give a π-base", checked - bad.len()),
    }
}

/// All families of subsets containing ∅ and X and closed under pairwise
/// union and intersection.
fn closure_systems(n: usize) -> BTreeSet<Vec<u32>> {
    let subsets = 1u32 << n;
    let full = subsets - 1;
    let mut out = BTreeSet::new();
    for fam in 0u64..(1u64 << subsets) {
        let member = |s: u32| fam & (1u64 << s) != 0;
        if !member(0) || !member(full) {
            continue;
        }
        let closed = (0..subsets)
            .filter(|&a| member(a))
            .all(|a| (0..subsets).filter(|&b| member(b)).all(|b| member(a | b) && member(a & b)));
        if closed {
            out.insert((0..subsets).filter(|&s| member(s)).collect());
        }
    }
    out
}

fn enumeration() -> Line {
    let mut details = Vec::new();
    let mut ok = true;
    for (n, expected) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let oracle = closure_systems(n);
        let ours: BTreeSet<Vec<u32>> = enumerate_topologies(n)
            .expect("n in range")
            .map(|s| s.opens().into_iter().map(|o| o.bits()).collect())
            .collect();
        let count = enumerate_topologies(n).expect("n in range").count();
        ok &= oracle.len() == expected && ours == oracle && count == expected;
        details.push(format!("n={n}: {count}"));
    }
    Line { ok, detail: details.join(", ") }
}

fn finite_sanity() -> Line {
    let ps = profiles(5).expect("profiles");
    let not_all_true = ps.iter().filter(|p| !p.all_true()).count();
    let unvalidated = ps.iter().filter(|p| !p.all_validated()).count();
    let core = ps
        .iter()
        .filter(|p| !(p.get(Property::QPoint) && p.get(Property::WtildePoint)))
        .count();
    let diagram = verify_diagram(&ps);
    Line {
        ok: not_all_true == 0 && unvalidated == 0 && core == 0 && diagram.violations.is_empty(),
        detail: format!(
            "{} profiles, {not_all_true} not all-true, {unvalidated} with unvalidated certificates, {} diagram violations",
            ps.len(),
            diagram.violations.len()
        ),
    }
}

fn main() {
    topogame::harness::init_workers();
    let all: Vec<Vec<FiniteSpace>> = (0..=4)
        .map(|n| if n == 0 { Vec::new() } else { enumerate_topologies(n).expect("n in range").collect() })
        .collect();
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "solver/oracle equivalence", t, solver_oracle_equivalence(&all));
    let t = Instant::now();
    ok &= report(2, "duality", t, duality());
    let t = Instant::now();
    ok &= report(3, "implication chain", t, implication_chain(&all));
    let t = Instant::now();
    ok &= report(4, "transformer soundness", t, transformer_soundness());
    let t = Instant::now();
    ok &= report(5, "ordinal example prefixes", t, omega1_prefixes());
    let t = Instant::now();
    ok &= report(6, "π-base extraction", t, pi_base());
    let t = Instant::now();
    ok &= report(7, "enumeration cross-check", t, enumeration());
    let t = Instant::now();
    ok &= report(8, "finite-model sanity", t, finite_sanity());
    if !ok {
        std::process::exit(1);
    }
}
