mod common;

use common::*;
use pointfree_core::covering::check_witness;
use pointfree_core::game::{
    counterplay, replay, solve, strategy_from_tree, game_matches_closure, unwind, Arena, GameSpec,
    Player,
};

#[test]
fn winner_matches_closure_membership() {
    let covers = all_covers(3);
    for m in corpus3() {
        for v in &covers {
            assert!(game_matches_closure(&m, v).unwrap(), "{:?} {v:?}", m.basis());
        }
    }
}

#[test]
fn strategies_terminate_against_every_counterplay() {
    for m in corpus3() {
        for v in all_covers(3) {
            let g = GameSpec::new(m.clone(), v.clone()).unwrap();
            let r = solve(&g).unwrap();
            match r.winner {
                Player::I => {
                    let s = r.strategy.unwrap();
                    let rp = replay(&g, &s).unwrap();
                    assert!(rp.terminates && rp.stuck.is_empty());
                    assert!(rp.max_moves <= r.ranks[&g.start()]);
                    let t = unwind(&g, &s).unwrap().unwrap();
                    let sys = g.system().unwrap();
                    assert_eq!(check_witness(&sys, v.members(), &t).unwrap(), Ok(()));
                    let again = replay(&g, &strategy_from_tree(&t)).unwrap();
                    assert!(again.terminates);
                }
                Player::II => {
                    assert!(r.strategy.is_none());
                    assert!(!m.member(&v, true).unwrap());
                    let replies = counterplay(&g).unwrap().unwrap();
                    assert!(replies.iter().all(|(p, _, q)| !r.ranks.contains_key(p)
                        && !r.ranks.contains_key(q)));
                }
            }
        }
    }
}

#[test]
fn ranks_are_monotone_along_the_strategy() {
    for m in corpus3() {
        for v in all_covers(3) {
            let g = GameSpec::new(m.clone(), v).unwrap();
            let r = solve(&g).unwrap();
            if let Some(s) = r.strategy {
                for (p, mv) in &s.moves {
                    for q in mv.members() {
                        assert!(r.ranks[q] < r.ranks[p]);
                    }
                }
            }
        }
    }
}
