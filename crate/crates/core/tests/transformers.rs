use proptest::prelude::*;
use topogame::game::{verify_strategy, GameSpec, Player};
use topogame::solver::solve;
use topogame::topology::enumerate_topologies;
use topogame::transformers::{dual_i, dual_iv, na_oo, pi_base_from_strategy};

fn instance(n: usize, pick: usize) -> Option<(topogame::topology::FiniteSpace, usize)> {
    let all: Vec<_> = enumerate_topologies(n).unwrap().collect();
    let s = all[pick % all.len()].clone();
    let x = s.points().find(|&x| !s.is_isolated(x))?;
    Some((s, x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_game_winner_transfers_to_both_omega_games(n in 2usize..=4, pick in any::<usize>()) {
        let Some((space, x)) = instance(n, pick) else { return Ok(()) };
        let q = GameSpec::q_game(space.clone(), x).unwrap();
        let r = solve(&q);
        prop_assert_eq!(r.winner, Player::I);
        let (d, s) = dual_i(&q, r.winning_strategy(), x).unwrap();
        prop_assert!(verify_strategy(&d, &s).is_ok());
        let (c, s) = na_oo(&q, r.winning_strategy(), x).unwrap();
        prop_assert!(verify_strategy(&c, &s).is_ok());
    }

    #[test]
    fn dual_winner_transfers_back(n in 2usize..=4, pick in any::<usize>()) {
        let Some((space, x)) = instance(n, pick) else { return Ok(()) };
        let d = GameSpec::dual_game(space, x).unwrap();
        let r = solve(&d);
        prop_assert_eq!(r.winner, Player::II);
        let (q, s) = dual_iv(&d, r.winning_strategy(), x).unwrap();
        prop_assert!(verify_strategy(&q, &s).is_ok());
    }

    #[test]
    fn winning_sequence_strategies_offer_a_pi_base(n in 2usize..=5, pick in any::<usize>()) {
        let Some((space, x)) = instance(n, pick) else { return Ok(()) };
        let g = GameSpec::wtilde_game(space.clone(), x).unwrap();
        let r = solve(&g);
        let rep = pi_base_from_strategy(&g, r.winning_strategy(), x, space.n() + 1).unwrap();
        prop_assert!(rep.is_pi_base);
    }
}
