//! The covering game `G(μX, 𝒱)`.
//!
//! Player I chooses a cover of the current piece (the restriction of a member
//! of the monoid); Player II picks a member of it, which becomes the current
//! piece. Player I wins once the piece lies inside a member of `𝒱`; an
//! infinite play is a win for Player II.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::covering::{
    inside_target, reachable_pieces, winning_ranks, CoveringError, LocalCovers, NoetherianTree,
    ReachError, RelationalCovers, RelationalMonoid, UniformCovers, UniformMonoid,
};
use crate::order::{Carrier, Cover, ElemId, PointSet};
use core::convert::Infallible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameError {
    Covering(CoveringError),
    /// Player II wins, so there is no winning strategy to extract.
    NoStrategy,
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::Covering(e) => e.fmt(f),
            GameError::NoStrategy => f.write_str("player II wins; no strategy for player I"),
        }
    }
}

impl core::error::Error for GameError {}

impl From<CoveringError> for GameError {
    fn from(e: CoveringError) -> Self {
        GameError::Covering(e)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Player {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub monoid: UniformMonoid,
    pub target: Cover<PointSet>,
    pub start: PointSet,
}

impl GameSpec {
    /// A game started at the full point set.
    pub fn new(monoid: UniformMonoid, target: Cover<PointSet>) -> Result<Self, GameError> {
        let start = monoid.carrier().full();
        Self::with_start(monoid, target, start)
    }

    pub fn with_start(
        monoid: UniformMonoid,
        target: Cover<PointSet>,
        start: PointSet,
    ) -> Result<Self, GameError> {
        let c = monoid.carrier();
        for &m in target.members() {
            c.check(m).map_err(CoveringError::from)?;
        }
        c.check(start).map_err(CoveringError::from)?;
        Ok(GameSpec {
            monoid,
            target,
            start,
        })
    }
}

/// A game board: local covers, a target, a start, and the pieces over which
/// the fixpoint is computed.
pub trait Arena {
    type Piece: Copy + Ord + fmt::Debug;
    type Sys<'a>: LocalCovers<Piece = Self::Piece, Error = Infallible>
    where
        Self: 'a;

    fn system(&self) -> Result<Self::Sys<'_>, CoveringError>;
    fn target(&self) -> &[Self::Piece];
    fn start(&self) -> Self::Piece;
    fn pieces(&self, sys: &Self::Sys<'_>) -> Result<Vec<Self::Piece>, CoveringError>;
}

/// Pieces are all subsets up to this many points, otherwise those reachable
/// from the start.
const ALL_SUBSETS_UP_TO: usize = 12;

impl Arena for GameSpec {
    type Piece = PointSet;
    type Sys<'a> = UniformCovers<'a>;

    fn system(&self) -> Result<UniformCovers<'_>, CoveringError> {
        Ok(self.monoid.local_covers())
    }

    fn target(&self) -> &[PointSet] {
        self.target.members()
    }

    fn start(&self) -> PointSet {
        self.start
    }

    fn pieces(&self, sys: &UniformCovers<'_>) -> Result<Vec<PointSet>, CoveringError> {
        if self.monoid.carrier().len() <= ALL_SUBSETS_UP_TO {
            Ok(self.monoid.carrier().subsets().collect())
        } else {
            reachable(sys, self.start)
        }
    }
}

/// The same game on a relational monoid: Player I offers a cover of the
/// current element from the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalGame {
    pub monoid: RelationalMonoid,
    pub target: Cover<ElemId>,
}

impl RelationalGame {
    pub fn new(monoid: RelationalMonoid, target: Cover<ElemId>) -> Result<Self, GameError> {
        for &m in target.members() {
            monoid.carrier().check(m).map_err(CoveringError::from)?;
        }
        Ok(RelationalGame { monoid, target })
    }
}

impl Arena for RelationalGame {
    type Piece = ElemId;
    type Sys<'a> = RelationalCovers<'a>;

    fn system(&self) -> Result<RelationalCovers<'_>, CoveringError> {
        self.monoid.local_covers()
    }

    fn target(&self) -> &[ElemId] {
        self.target.members()
    }

    fn start(&self) -> ElemId {
        self.monoid.carrier().top()
    }

    fn pieces(&self, _sys: &RelationalCovers<'_>) -> Result<Vec<ElemId>, CoveringError> {
        Ok(self.monoid.carrier().elements().collect())
    }
}

fn reachable<S: LocalCovers<Error = Infallible>>(
    sys: &S,
    from: S::Piece,
) -> Result<Vec<S::Piece>, CoveringError> {
    reachable_pieces(sys, from, 1 << 16).map_err(|e| match e {
        ReachError::Limit(limit) => CoveringError::LimitExceeded {
            what: "pieces",
            limit,
        },
        ReachError::Enumerator(e) => match e {},
    })
}

fn covers<S: LocalCovers<Error = Infallible>>(sys: &S, p: S::Piece) -> Vec<Vec<S::Piece>> {
    sys.covers_of(p).unwrap_or_else(|e| match e {})
}

/// Player I's positional choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy<P> {
    pub moves: BTreeMap<P, Cover<P>>,
}

impl<P> Default for Strategy<P> {
    fn default() -> Self {
        Strategy {
            moves: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameResult<P> {
    pub winner: Player,
    pub strategy: Option<Strategy<P>>,
    /// Sorted pieces from which Player I wins.
    pub winning_set: Vec<P>,
    /// Least number of rounds Player I needs from each winning piece.
    pub ranks: BTreeMap<P, usize>,
}

/// Winning pieces are the least fixpoint of "inside the target, or some
/// available cover has only winning members".
pub fn solve<A: Arena>(g: &A) -> Result<GameResult<A::Piece>, GameError> {
    let sys = g.system()?;
    let pieces = g.pieces(&sys)?;
    let ranks = winning_ranks(&sys, &pieces, g.target()).unwrap_or_else(|e| match e {});
    let winner = if ranks.contains_key(&g.start()) || inside_target(&sys, g.start(), g.target()) {
        Player::I
    } else {
        Player::II
    };
    let strategy = match winner {
        Player::I => Some(strategy_of(&sys, g.target(), g.start(), &ranks)),
        Player::II => None,
    };
    Ok(GameResult {
        winner,
        strategy,
        winning_set: ranks.keys().copied().collect(),
        ranks,
    })
}

fn strategy_of<S: LocalCovers<Error = Infallible>>(
    sys: &S,
    target: &[S::Piece],
    start: S::Piece,
    ranks: &BTreeMap<S::Piece, usize>,
) -> Strategy<S::Piece> {
    let mut moves = BTreeMap::new();
    let mut todo = alloc::vec![start];
    let mut seen = BTreeSet::new();
    while let Some(p) = todo.pop() {
        if !seen.insert(p) || inside_target(sys, p, target) {
            continue;
        }
        let r = ranks[&p];
        let certified = |c: &Vec<S::Piece>| {
            c.iter().all(|q| {
                inside_target(sys, *q, target) || ranks.get(q).is_some_and(|&rq| rq < r)
            })
        };
        let choice = covers(sys, p)
            .into_iter()
            .find(certified)
            .expect("a winning piece has a certifying cover");
        todo.extend(choice.iter().copied());
        moves.insert(p, Cover::raw(choice));
    }
    Strategy { moves }
}

/// The stationary strategy of [`solve`]: at each piece reached, the least
/// cover whose members all have smaller rank.
pub fn extract_strategy<A: Arena>(g: &A) -> Result<Strategy<A::Piece>, GameError> {
    solve(g)?.strategy.ok_or(GameError::NoStrategy)
}

/// Outcome of playing a strategy against every reply of Player II.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay<P> {
    /// Every play ends inside the target.
    pub terminates: bool,
    /// Longest play, in rounds.
    pub max_moves: usize,
    /// Pieces reached where the strategy had no move or an illegal one.
    pub stuck: Vec<P>,
}

/// Plays `s` against all counterplays from the start; a play that revisits a
/// piece never ends.
pub fn replay<A: Arena>(g: &A, s: &Strategy<A::Piece>) -> Result<Replay<A::Piece>, GameError> {
    let sys = g.system()?;
    let mut ctx = PlayCtx {
        sys: &sys,
        target: g.target(),
        strategy: s,
        memo: BTreeMap::new(),
        path: BTreeSet::new(),
        stuck: Vec::new(),
    };
    let longest = ctx.play(g.start());
    let mut stuck = ctx.stuck;
    stuck.sort();
    stuck.dedup();
    Ok(Replay {
        terminates: longest.is_some(),
        max_moves: longest.unwrap_or(0),
        stuck,
    })
}

struct PlayCtx<'s, S: LocalCovers> {
    sys: &'s S,
    target: &'s [S::Piece],
    strategy: &'s Strategy<S::Piece>,
    memo: BTreeMap<S::Piece, Option<usize>>,
    path: BTreeSet<S::Piece>,
    stuck: Vec<S::Piece>,
}

impl<S: LocalCovers<Error = Infallible>> PlayCtx<'_, S> {
    fn play(&mut self, p: S::Piece) -> Option<usize> {
        if inside_target(self.sys, p, self.target) {
            return Some(0);
        }
        if let Some(&m) = self.memo.get(&p) {
            return m;
        }
        if self.path.contains(&p) {
            return None;
        }
        let mv = match self.strategy.moves.get(&p) {
            Some(mv) if covers(self.sys, p).iter().any(|c| c.as_slice() == mv.members()) => mv,
            _ => {
                self.stuck.push(p);
                self.memo.insert(p, None);
                return None;
            }
        };
        self.path.insert(p);
        let mut longest = Some(0);
        for &q in mv.members() {
            match self.play(q) {
                Some(n) => longest = longest.map(|l: usize| l.max(n + 1)),
                None => {
                    longest = None;
                    break;
                }
            }
        }
        self.path.remove(&p);
        self.memo.insert(p, longest);
        longest
    }
}

/// The tree of all plays consistent with `s`; `None` if some play does not
/// end.
pub fn unwind<A: Arena>(
    g: &A,
    s: &Strategy<A::Piece>,
) -> Result<Option<NoetherianTree<A::Piece>>, GameError> {
    if !replay(g, s)?.terminates {
        return Ok(None);
    }
    let sys = g.system()?;
    Ok(Some(unwind_at(&sys, g.target(), s, g.start())))
}

fn unwind_at<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    s: &Strategy<S::Piece>,
    p: S::Piece,
) -> NoetherianTree<S::Piece> {
    if inside_target(sys, p, target) {
        return NoetherianTree::leaf(p);
    }
    NoetherianTree {
        node: p,
        children: s.moves[&p]
            .members()
            .iter()
            .map(|&q| unwind_at(sys, target, s, q))
            .collect(),
    }
}

/// Reads a strategy off a witness tree: each internal node's children are
/// the move at that piece (the first occurrence wins).
pub fn strategy_from_tree<P: Copy + Ord>(t: &NoetherianTree<P>) -> Strategy<P> {
    fn walk<P: Copy + Ord>(t: &NoetherianTree<P>, moves: &mut BTreeMap<P, Cover<P>>) {
        if t.children.is_empty() {
            return;
        }
        moves
            .entry(t.node)
            .or_insert_with(|| Cover::raw(t.children.iter().map(|c| c.node)));
        for c in &t.children {
            walk(c, moves);
        }
    }
    let mut moves = BTreeMap::new();
    walk(t, &mut moves);
    Strategy { moves }
}

/// One reply of Player II: at `piece`, against `offer`, pick `reply`.
pub type Reply<P> = (P, Cover<P>, P);

/// Player II's replies from losing pieces: for each reachable losing piece
/// and each cover Player I may offer, a member outside the target that is
/// again losing. `None` if some cover admits no such reply.
pub fn counterplay<A: Arena>(g: &A) -> Result<Option<Vec<Reply<A::Piece>>>, GameError> {
    let r = solve(g)?;
    if r.winner == Player::I {
        return Ok(Some(Vec::new()));
    }
    let sys = g.system()?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut todo = alloc::vec![g.start()];
    while let Some(p) = todo.pop() {
        if !seen.insert(p) {
            continue;
        }
        for c in covers(&sys, p) {
            let reply = c
                .iter()
                .copied()
                .find(|q| !inside_target(&sys, *q, g.target()) && !r.ranks.contains_key(q));
            match reply {
                Some(q) => {
                    todo.push(q);
                    out.push((p, Cover::raw(c), q));
                }
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// Player I wins `G(m, v)` exactly when `v ∈ λm`.
pub fn game_matches_closure(m: &UniformMonoid, v: &Cover<PointSet>) -> Result<bool, GameError> {
    let g = GameSpec::new(m.clone(), v.clone())?;
    let wins = solve(&g)?.winner == Player::I;
    Ok(wins == m.member(v, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::check_witness;
    use crate::covering::CoveringRelation;
    use crate::order::{Preorder, SubsetCarrier};
    use alloc::vec;

    fn ps(ix: &[usize]) -> PointSet {
        PointSet::from_indices(ix.iter().copied())
    }

    fn cov(sets: &[&[usize]]) -> Cover<PointSet> {
        Cover::raw(sets.iter().map(|s| ps(s)))
    }

    fn monoid(basis: &[Cover<PointSet>]) -> UniformMonoid {
        UniformMonoid::new(SubsetCarrier::new(["0", "1", "2"]).unwrap(), basis.to_vec()).unwrap()
    }

    #[test]
    fn trivial_target() {
        let m = monoid(&[cov(&[&[0, 1], &[1, 2]])]);
        let g = GameSpec::new(m.clone(), m.top_cover()).unwrap();
        let r = solve(&g).unwrap();
        assert_eq!(r.winner, Player::I);
        assert!(r.strategy.unwrap().moves.is_empty());
    }

    #[test]
    fn basis_cover_in_one_move() {
        let u = cov(&[&[0, 1], &[1, 2]]);
        let g = GameSpec::new(monoid(core::slice::from_ref(&u)), u.clone()).unwrap();
        let s = extract_strategy(&g).unwrap();
        assert_eq!(s.moves.len(), 1);
        assert_eq!(s.moves[&ps(&[0, 1, 2])], u);
        assert_eq!(replay(&g, &s).unwrap().max_moves, 1);
    }

    #[test]
    fn player_two_fixture() {
        let g = GameSpec::new(monoid(&[cov(&[&[0, 1], &[1, 2]])]), cov(&[&[0], &[1], &[2]])).unwrap();
        let r = solve(&g).unwrap();
        assert_eq!(r.winner, Player::II);
        assert_eq!(extract_strategy(&g).unwrap_err(), GameError::NoStrategy);
        assert!(counterplay(&g).unwrap().is_some());
        assert!(game_matches_closure(&g.monoid, &g.target).unwrap());
    }

    #[test]
    fn two_rounds_on_a_relational_monoid() {
        let p = Preorder::from_relation(
            &["T", "b", "c", "d", "e"],
            &[("b", "T"), ("c", "T"), ("d", "b"), ("e", "c")],
        )
        .unwrap();
        let id = |n: &str| p.index_of(n).unwrap();
        let pairs = vec![
            (id("T"), p.cover_of_names(&["b", "c"]).unwrap()),
            (id("b"), p.cover_of_names(&["d"]).unwrap()),
            (id("c"), p.cover_of_names(&["e"]).unwrap()),
        ];
        let m = RelationalMonoid::from_relation(&CoveringRelation::new(p.clone(), pairs).unwrap());
        let g = RelationalGame::new(m, p.cover_of_names(&["c", "d"]).unwrap()).unwrap();
        let r = solve(&g).unwrap();
        assert_eq!(r.winner, Player::I);
        let s = r.strategy.unwrap();
        assert_eq!(s.moves.len(), 2);
        let rep = replay(&g, &s).unwrap();
        assert!(rep.terminates && rep.stuck.is_empty());
        assert_eq!(rep.max_moves, 2);
        let t = unwind(&g, &s).unwrap().unwrap();
        let sys = g.system().unwrap();
        assert_eq!(check_witness(&sys, g.target(), &t).unwrap(), Ok(()));
    }

    #[test]
    fn witness_round_trip() {
        let m = monoid(&[cov(&[&[0], &[1, 2]]), cov(&[&[0, 1], &[2]])]);
        let g = GameSpec::new(m, cov(&[&[0], &[1], &[2]])).unwrap();
        let w = g.monoid.witness_tree(&g.target).unwrap().unwrap();
        let s = strategy_from_tree(&w);
        assert!(replay(&g, &s).unwrap().terminates);
        let s = extract_strategy(&g).unwrap();
        let t = unwind(&g, &s).unwrap().unwrap();
        let sys = g.system().unwrap();
        assert_eq!(check_witness(&sys, g.target(), &t).unwrap(), Ok(()));
    }
}
