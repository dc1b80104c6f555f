//! Covering relations and monoids of covers.
//!
//! A [`CoveringRelation`] is a set of pairs `(a, U)` over a [`Preorder`].
//! [`saturate`] closes it under the four covering axioms (reflexivity,
//! order, meet, transitivity). Closed relations on a finite carrier are
//! principal: each element has a finest cover `F(a)` and `Cov(a, V)` holds
//! exactly when `F(a)` refines `V`, so the engine iterates on `F`.
//!
//! Monoids of covers come in two flavours. A [`UniformMonoid`] is a filter of
//! covers of a finite point set given by a basis (a pre-uniformity). A
//! [`RelationalMonoid`] is a relation over a preorder closed under the first
//! three axioms. Both expose their local covers through [`LocalCovers`], on
//! which the Noetherian witness search and the game solver run.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::Bits;
use crate::order::{
    meet_unchecked, normalize, normalize_members, refines_unchecked, restrict, star_refines,
    Carrier, Cover, ElemId, OrderError, PointSet, Preorder, SubsetCarrier,
};

/// Default ceiling on antichain enumeration.
pub const ANTICHAIN_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoveringError {
    Order(OrderError),
    /// A basis member whose union misses some point.
    NotACoverOfTop(String),
    LimitExceeded { what: &'static str, limit: usize },
}

impl fmt::Display for CoveringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringError::Order(e) => e.fmt(f),
            CoveringError::NotACoverOfTop(c) => write!(f, "{c} does not cover the point set"),
            CoveringError::LimitExceeded { what, limit } => {
                write!(f, "internal limit exceeded: more than {limit} {what}")
            }
        }
    }
}

impl core::error::Error for CoveringError {}

impl From<OrderError> for CoveringError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::LimitExceeded { what, limit } => CoveringError::LimitExceeded { what, limit },
            other => CoveringError::Order(other),
        }
    }
}

/// One derivation step: the items first present at this stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage<T> {
    pub index: usize,
    pub added: Vec<T>,
}

/// Stages of a fixpoint computation; the last stage adds nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace<T> {
    pub stages: Vec<Stage<T>>,
}

impl<T> DerivationTrace<T> {
    pub(crate) fn new() -> Self {
        DerivationTrace { stages: Vec::new() }
    }

    pub(crate) fn push(&mut self, added: Vec<T>) {
        let index = self.stages.len() + 1;
        self.stages.push(Stage { index, added });
    }

    /// Number of stages that added something.
    pub fn rank(&self) -> usize {
        self.stages.iter().filter(|s| !s.added.is_empty()).count()
    }
}

/// Which filter supplies the inner covers of a derivative step.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Derivative {
    /// `μ^(α+1) = μ^(α)/μ`
    #[default]
    Slowed,
    /// `μ^(α+1) = μ^(α)/μ^(α)`
    Classical,
}

/// A finite set of pairs `(a, U)` over a preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringRelation {
    carrier: Preorder,
    pairs: BTreeSet<(ElemId, Cover<ElemId>)>,
    closed: bool,
}

impl CoveringRelation {
    /// Covers are normalized; `closed` is set when the pairs pass
    /// [`audit_axioms`].
    pub fn new<I>(carrier: Preorder, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (ElemId, Cover<ElemId>)>,
    {
        let mut set = BTreeSet::new();
        for (a, u) in pairs {
            carrier.check(a)?;
            for &m in u.members() {
                carrier.check(m)?;
            }
            set.insert((a, normalize(&u, &carrier)));
        }
        let mut r = CoveringRelation {
            carrier,
            pairs: set,
            closed: false,
        };
        r.closed = audit_axioms(&r).is_empty();
        Ok(r)
    }

    fn closed_from_finest(carrier: Preorder, finest: Vec<Cover<ElemId>>) -> Self {
        let pairs = carrier.elements().zip(finest).collect();
        CoveringRelation {
            carrier,
            pairs,
            closed: true,
        }
    }

    pub fn carrier(&self) -> &Preorder {
        &self.carrier
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(ElemId, Cover<ElemId>)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Stored covers of `a`.
    pub fn covers_of(&self, a: ElemId) -> impl Iterator<Item = &Cover<ElemId>> {
        self.pairs
            .range((a, Cover::empty())..)
            .take_while(move |(b, _)| *b == a)
            .map(|(_, u)| u)
    }

    /// Some stored cover of `a` refines `u`.
    pub fn holds(&self, a: ElemId, u: &Cover<ElemId>) -> bool {
        self.covers_of(a)
            .any(|w| refines_unchecked(w, u, &self.carrier))
    }

    /// The finest stored cover of `a`, when the relation is closed.
    pub fn finest(&self, a: ElemId) -> Option<&Cover<ElemId>> {
        if !self.closed {
            return None;
        }
        let mut it = self.covers_of(a);
        let first = it.next()?;
        Some(
            it.fold(first, |best, c| {
                if refines_unchecked(c, best, &self.carrier) {
                    c
                } else {
                    best
                }
            }),
        )
    }
}

/// Missing conclusions of each axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub c1: Vec<(ElemId, Cover<ElemId>)>,
    pub c2: Vec<(ElemId, Cover<ElemId>)>,
    pub c3: Vec<(ElemId, Cover<ElemId>)>,
    pub c4: Vec<(ElemId, Cover<ElemId>)>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.c1.is_empty() && self.c2.is_empty() && self.c3.is_empty() && self.c4.is_empty()
    }

    pub fn total(&self) -> usize {
        self.c1.len() + self.c2.len() + self.c3.len() + self.c4.len()
    }
}

fn minimal_covers<'a, C: Carrier>(
    covers: impl Iterator<Item = &'a Cover<C::Elem>>,
    carrier: &C,
) -> Vec<Cover<C::Elem>>
where
    C::Elem: 'a,
{
    let all: Vec<&Cover<C::Elem>> = covers.collect();
    let mut out: Vec<Cover<C::Elem>> = Vec::new();
    for &c in &all {
        let dominated = all
            .iter()
            .any(|&o| o != c && refines_unchecked(o, c, carrier) && !refines_unchecked(c, o, carrier));
        if !dominated && !out.iter().any(|o| o == c) {
            out.push(c.clone());
        }
    }
    out
}

fn cartesian<T: Clone>(options: &[Vec<T>], limit: usize) -> Result<Vec<Vec<T>>, CoveringError> {
    let mut acc: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for opts in options {
        let mut next = Vec::new();
        for a in &acc {
            for o in opts {
                if next.len() >= limit {
                    return Err(CoveringError::LimitExceeded {
                        what: "cover combinations",
                        limit,
                    });
                }
                let mut a2 = a.clone();
                a2.push(o.clone());
                next.push(a2);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Audits the stored pairs against the four axioms. `Cov(a, V)` is read as
/// "some stored cover of `a` refines `V`"; the meet and transitivity axioms
/// are instantiated over stored pairs.
pub fn audit_axioms(r: &CoveringRelation) -> AxiomReport {
    let p = &r.carrier;
    let mut report = AxiomReport::default();
    for a in p.elements() {
        let own = Cover::singleton(a);
        if !r.holds(a, &own) {
            report.c1.push((a, normalize(&own, p)));
        }
        for b in p.elements() {
            if b != a && p.le(a, b) {
                let up = Cover::singleton(b);
                if !r.holds(a, &up) {
                    report.c2.push((a, normalize(&up, p)));
                }
            }
        }
    }
    let mut c3 = BTreeSet::new();
    let mut c4 = BTreeSet::new();
    for (a, u) in &r.pairs {
        for v in r.covers_of(*a) {
            if u < v {
                continue;
            }
            let m = meet_unchecked(u, v, p);
            if !r.holds(*a, &m) {
                c3.insert((*a, m));
            }
        }
        let options: Option<Vec<Vec<Cover<ElemId>>>> = u
            .members()
            .iter()
            .map(|&x| {
                let mins = minimal_covers(r.covers_of(x), p);
                if mins.is_empty() {
                    None
                } else {
                    Some(mins)
                }
            })
            .collect();
        let Some(options) = options else { continue };
        let Ok(combos) = cartesian(&options, 1 << 14) else {
            continue;
        };
        for choice in combos {
            let v = normalize_members(choice.iter().flat_map(|w| w.members().iter().copied()), p);
            if !r.holds(*a, &v) {
                c4.insert((*a, v));
            }
        }
    }
    report.c3 = c3.into_iter().collect();
    report.c4 = c4.into_iter().collect();
    report
}

/// Least relation containing `generators` and satisfying the four axioms.
///
/// Each stage applies, to every element at once, the meet with the finest
/// covers of the elements above it and the composition through its own
/// finest cover. The trace lists `(a, F(a))` for every element whose finest
/// cover became strictly finer at that stage.
pub fn saturate(
    generators: &CoveringRelation,
) -> (CoveringRelation, DerivationTrace<(ElemId, Cover<ElemId>)>) {
    saturate_bounded(generators, usize::MAX)
}

/// [`saturate`] stopped after `max_stages` stages. The result is flagged
/// closed only if the fixpoint was reached.
pub fn saturate_bounded(
    generators: &CoveringRelation,
    max_stages: usize,
) -> (CoveringRelation, DerivationTrace<(ElemId, Cover<ElemId>)>) {
    let p = &generators.carrier;
    let mut finest: Vec<Cover<ElemId>> = p
        .elements()
        .map(|a| {
            generators
                .covers_of(a)
                .fold(normalize(&Cover::singleton(a), p), |acc, u| {
                    meet_unchecked(&acc, u, p)
                })
        })
        .collect();
    let mut trace = DerivationTrace::new();
    let mut reached = false;
    for _ in 0..max_stages {
        let next: Vec<Cover<ElemId>> = p
            .elements()
            .map(|a| {
                let mut c = finest[a.index()].clone();
                for b in p.elements() {
                    if b != a && p.le(a, b) {
                        c = meet_unchecked(&c, &finest[b.index()], p);
                    }
                }
                let composed = normalize_members(
                    finest[a.index()]
                        .members()
                        .iter()
                        .flat_map(|u| finest[u.index()].members().iter().copied()),
                    p,
                );
                meet_unchecked(&c, &composed, p)
            })
            .collect();
        let added: Vec<(ElemId, Cover<ElemId>)> = p
            .elements()
            .filter(|a| next[a.index()] != finest[a.index()])
            .map(|a| (a, next[a.index()].clone()))
            .collect();
        let done = added.is_empty();
        trace.push(added);
        finest = next;
        if done {
            reached = true;
            break;
        }
    }
    let mut out = CoveringRelation::closed_from_finest(p.clone(), finest);
    if !reached {
        out.closed = audit_axioms(&out).is_empty();
    }
    (out, trace)
}

/// A relation over a preorder closed under reflexivity, order and meets,
/// and under coarsening of covers. Each element keeps its minimal covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalMonoid {
    carrier: Preorder,
    base: Vec<Vec<Cover<ElemId>>>,
}

impl RelationalMonoid {
    /// Closure of the stored pairs under the first three axioms.
    pub fn from_relation(r: &CoveringRelation) -> Self {
        let p = &r.carrier;
        let base = p
            .elements()
            .map(|a| {
                let c = r
                    .covers_of(a)
                    .fold(normalize(&Cover::singleton(a), p), |acc, u| {
                        meet_unchecked(&acc, u, p)
                    });
                alloc::vec![c]
            })
            .collect();
        RelationalMonoid {
            carrier: p.clone(),
            base,
        }
    }

    /// A monoid from explicit minimal covers; each is met with `{a}` so the
    /// reflexivity axiom holds.
    pub fn from_covers(carrier: Preorder, base: Vec<Vec<Cover<ElemId>>>) -> Self {
        let base = carrier
            .elements()
            .zip(base)
            .map(|(a, covers)| {
                let own = normalize(&Cover::singleton(a), &carrier);
                let met: Vec<Cover<ElemId>> = if covers.is_empty() {
                    alloc::vec![own]
                } else {
                    covers
                        .iter()
                        .map(|c| meet_unchecked(&normalize(c, &carrier), &own, &carrier))
                        .collect()
                };
                minimal_covers(met.iter(), &carrier)
            })
            .collect();
        RelationalMonoid { carrier, base }
    }

    pub fn carrier(&self) -> &Preorder {
        &self.carrier
    }

    pub fn base_covers(&self, a: ElemId) -> &[Cover<ElemId>] {
        &self.base[a.index()]
    }

    pub fn holds(&self, a: ElemId, u: &Cover<ElemId>) -> Result<bool, CoveringError> {
        self.carrier.check(a)?;
        for &m in u.members() {
            self.carrier.check(m)?;
        }
        Ok(self.base[a.index()]
            .iter()
            .any(|w| refines_unchecked(w, u, &self.carrier)))
    }

    /// `(top, U)` is in the relation.
    pub fn member(&self, u: &Cover<ElemId>) -> Result<bool, CoveringError> {
        self.holds(self.carrier.top(), u)
    }

    /// The relation as explicit pairs.
    pub fn to_relation(&self) -> CoveringRelation {
        let pairs: Vec<(ElemId, Cover<ElemId>)> = self
            .carrier
            .elements()
            .flat_map(|a| self.base[a.index()].iter().map(move |c| (a, c.clone())))
            .collect();
        CoveringRelation::new(self.carrier.clone(), pairs).expect("ids come from the carrier")
    }

    /// Closure under transitivity by the derivation
    /// `Cov^(α+1) = {(a,V) : some (a,U) in Cov with (u,V) in Cov^(α) for all u in U}`,
    /// with covers held as up-sets of antichains.
    pub fn lambda_close(
        &self,
        variant: Derivative,
    ) -> Result<(RelationalMonoid, DerivationTrace<(ElemId, Cover<ElemId>)>), CoveringError> {
        let p = &self.carrier;
        let space = AntichainSpace::new(p, ANTICHAIN_LIMIT)?;
        let n_ant = space.ants.len();
        let base_sets: Vec<Bits> = p
            .elements()
            .map(|a| space.up_of_all(&self.base[a.index()]))
            .collect();
        let mut current = base_sets.clone();
        let mut trace = DerivationTrace::new();
        loop {
            let mut next = current.clone();
            for a in p.elements() {
                let outer = match variant {
                    Derivative::Slowed => &base_sets[a.index()],
                    Derivative::Classical => &current[a.index()],
                };
                for i in outer.iter() {
                    let mut inner = Bits::full(n_ant);
                    for u in space.ants[i].members() {
                        inner.and_with(&current[u.index()]);
                    }
                    next[a.index()].or_with(&inner);
                }
            }
            let mut added = Vec::new();
            for a in p.elements() {
                let fresh: Vec<usize> = next[a.index()]
                    .iter()
                    .filter(|&i| !current[a.index()].contains(i))
                    .collect();
                for i in space.minimal_in(&next[a.index()]) {
                    if fresh.contains(&i) {
                        added.push((a, space.ants[i].clone()));
                    }
                }
            }
            let done = next == current;
            trace.push(added);
            current = next;
            if done {
                break;
            }
        }
        let base = current
            .iter()
            .map(|set| {
                space
                    .minimal_in(set)
                    .into_iter()
                    .map(|i| space.ants[i].clone())
                    .collect()
            })
            .collect();
        Ok((
            RelationalMonoid {
                carrier: p.clone(),
                base,
            },
            trace,
        ))
    }

    pub fn is_locally_fine(&self) -> Result<bool, CoveringError> {
        Ok(self.rank()? == 0)
    }

    pub fn rank(&self) -> Result<usize, CoveringError> {
        Ok(self.lambda_close(Derivative::Slowed)?.1.rank())
    }

    /// Local covers of each element: every antichain some base cover refines.
    pub fn local_covers(&self) -> Result<RelationalCovers<'_>, CoveringError> {
        let space = AntichainSpace::new(&self.carrier, ANTICHAIN_LIMIT)?;
        let options = self
            .carrier
            .elements()
            .map(|a| {
                space
                    .up_of_all(&self.base[a.index()])
                    .iter()
                    .map(|i| space.ants[i].members().to_vec())
                    .collect()
            })
            .collect();
        Ok(RelationalCovers {
            carrier: &self.carrier,
            options,
        })
    }

    /// Noetherian witness for `(top, v)` under the transitive closure.
    pub fn witness_tree(
        &self,
        v: &Cover<ElemId>,
    ) -> Result<Option<NoetherianTree<ElemId>>, CoveringError> {
        for &m in v.members() {
            self.carrier.check(m)?;
        }
        let sys = self.local_covers()?;
        let depth = self.carrier.len();
        witness_search(&sys, v.members(), depth).map_err(|e| match e {})
    }
}

struct AntichainSpace {
    ants: Vec<Cover<ElemId>>,
    index: BTreeMap<Cover<ElemId>, usize>,
    up: Vec<Bits>,
}

impl AntichainSpace {
    fn new(p: &Preorder, limit: usize) -> Result<Self, CoveringError> {
        let ants = p.antichains(limit)?;
        let index = ants.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let up = ants
            .iter()
            .map(|a| {
                let mut b = Bits::new(ants.len());
                for (j, c) in ants.iter().enumerate() {
                    if refines_unchecked(a, c, p) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        Ok(AntichainSpace { ants, index, up })
    }

    fn up_of_all(&self, covers: &[Cover<ElemId>]) -> Bits {
        let mut b = Bits::new(self.ants.len());
        for c in covers {
            b.or_with(&self.up[self.index[c]]);
        }
        b
    }

    fn minimal_in(&self, set: &Bits) -> Vec<usize> {
        set.iter()
            .filter(|&i| !set.iter().any(|j| j != i && self.up[j].contains(i)))
            .collect()
    }
}

/// [`LocalCovers`] view of a [`RelationalMonoid`].
pub struct RelationalCovers<'a> {
    carrier: &'a Preorder,
    options: Vec<Vec<Vec<ElemId>>>,
}

impl LocalCovers for RelationalCovers<'_> {
    type Piece = ElemId;
    type Error = core::convert::Infallible;

    fn root(&self) -> ElemId {
        self.carrier.top()
    }

    fn le(&self, a: ElemId, b: ElemId) -> bool {
        self.carrier.le(a, b)
    }

    fn covers_of(&self, p: ElemId) -> Result<Vec<Vec<ElemId>>, Self::Error> {
        Ok(self.options[p.index()].clone())
    }
}

/// A filter of covers of a finite point set generated by a finite basis under
/// meets and coarsening. An empty basis generates the trivial filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformMonoid {
    carrier: SubsetCarrier,
    basis: Vec<Cover<PointSet>>,
}

impl UniformMonoid {
    pub fn new<I>(carrier: SubsetCarrier, basis: I) -> Result<Self, CoveringError>
    where
        I: IntoIterator<Item = Cover<PointSet>>,
    {
        let mut out = BTreeSet::new();
        for c in basis {
            for &m in c.members() {
                carrier.check(m)?;
            }
            if c.union() != carrier.full() {
                return Err(CoveringError::NotACoverOfTop(cover_name(&carrier, &c)));
            }
            out.insert(normalize(&c, &carrier));
        }
        Ok(UniformMonoid {
            carrier,
            basis: out.into_iter().collect(),
        })
    }

    pub fn carrier(&self) -> &SubsetCarrier {
        &self.carrier
    }

    pub fn basis(&self) -> &[Cover<PointSet>] {
        &self.basis
    }

    pub fn top_cover(&self) -> Cover<PointSet> {
        normalize(&Cover::singleton(self.carrier.full()), &self.carrier)
    }

    fn check_cover(&self, v: &Cover<PointSet>) -> Result<(), CoveringError> {
        for &m in v.members() {
            self.carrier.check(m)?;
        }
        Ok(())
    }

    /// The meet of all basis covers: the finest member.
    pub fn finest(&self) -> Cover<PointSet> {
        self.basis
            .iter()
            .fold(self.top_cover(), |acc, b| meet_unchecked(&acc, b, &self.carrier))
    }

    /// All finite meets of basis covers, the empty meet included.
    pub fn meet_closure(&self) -> Vec<Cover<PointSet>> {
        let mut set: BTreeSet<Cover<PointSet>> = BTreeSet::new();
        set.insert(self.top_cover());
        for b in &self.basis {
            let current: Vec<Cover<PointSet>> = set.iter().cloned().collect();
            for c in current {
                set.insert(meet_unchecked(&c, b, &self.carrier));
            }
        }
        set.into_iter().collect()
    }

    /// Membership in the filter generated by the basis (no closure).
    pub fn member_base(&self, v: &Cover<PointSet>) -> Result<bool, CoveringError> {
        self.check_cover(v)?;
        Ok(self
            .meet_closure()
            .iter()
            .any(|c| refines_unchecked(c, v, &self.carrier)))
    }

    /// Membership, in `λm` when `closed` is set.
    pub fn member(&self, v: &Cover<PointSet>, closed: bool) -> Result<bool, CoveringError> {
        if closed {
            self.check_cover(v)?;
            let (l, _) = self.lambda_close(Derivative::Slowed)?;
            l.member_base(v)
        } else {
            self.member_base(v)
        }
    }

    /// Iterates the derivative: for each stage cover `{U_i}` and inner covers
    /// `{V^i_j}` chosen per member, the combination `{U_i ∩ V^i_j}` joins the
    /// next stage. Only refinement-minimal inner choices are combined, since
    /// coarser choices yield coarser combinations. Each stage is kept closed
    /// under meets.
    pub fn lambda_close(
        &self,
        variant: Derivative,
    ) -> Result<(UniformMonoid, DerivationTrace<Cover<PointSet>>), CoveringError> {
        let c = &self.carrier;
        let base_pool = self.meet_closure();
        let mut stage = base_pool.clone();
        let mut trace = DerivationTrace::new();
        loop {
            let pool = match variant {
                Derivative::Slowed => &base_pool,
                Derivative::Classical => &stage,
            };
            let mut fresh: BTreeSet<Cover<PointSet>> = BTreeSet::new();
            for u in &stage {
                let options: Vec<Vec<Cover<PointSet>>> = u
                    .members()
                    .iter()
                    .map(|&ui| {
                        let restricted: Vec<Cover<PointSet>> =
                            pool.iter().map(|w| restrict(w, ui, c)).collect();
                        minimal_covers(restricted.iter(), c)
                    })
                    .collect();
                for choice in cartesian(&options, 1 << 14)? {
                    let combined = normalize_members(
                        choice.iter().flat_map(|w| w.members().iter().copied()),
                        c,
                    );
                    if !stage.iter().any(|s| refines_unchecked(s, &combined, c)) {
                        fresh.insert(combined);
                    }
                }
            }
            if fresh.is_empty() {
                trace.push(Vec::new());
                break;
            }
            let before: Vec<Cover<PointSet>> = stage.clone();
            let mut set: BTreeSet<Cover<PointSet>> = stage.into_iter().collect();
            set.extend(fresh);
            loop {
                let items: Vec<Cover<PointSet>> = set.iter().cloned().collect();
                let n = set.len();
                for a in &items {
                    for b in &items {
                        set.insert(meet_unchecked(a, b, c));
                    }
                }
                if set.len() == n {
                    break;
                }
            }
            stage = set.into_iter().collect();
            let added = stage
                .iter()
                .filter(|s| !before.iter().any(|b| refines_unchecked(b, s, c)))
                .cloned()
                .collect();
            trace.push(added);
        }
        Ok((
            UniformMonoid {
                carrier: c.clone(),
                basis: stage,
            },
            trace,
        ))
    }

    /// `λm` has the same members as `m`.
    pub fn is_locally_fine(&self) -> Result<bool, CoveringError> {
        let (l, _) = self.lambda_close(Derivative::Slowed)?;
        let own = self.meet_closure();
        Ok(l
            .basis
            .iter()
            .all(|v| own.iter().any(|o| refines_unchecked(o, v, &self.carrier))))
    }

    pub fn rank(&self) -> Result<usize, CoveringError> {
        Ok(self.lambda_close(Derivative::Slowed)?.1.rank())
    }

    /// Every basis cover is star-refined by a member of the meet closure.
    pub fn is_normal(&self) -> bool {
        let mc = self.meet_closure();
        let tops = [self.top_cover()];
        let targets: &[Cover<PointSet>] = if self.basis.is_empty() { &tops } else { &self.basis };
        targets.iter().all(|u| {
            mc.iter()
                .any(|v| star_refines(v, u, &self.carrier).unwrap_or(false))
        })
    }

    /// The monoid restricted to the points of `piece`, re-indexed onto a
    /// carrier of those points.
    pub fn restrict_to(&self, piece: PointSet) -> Result<(UniformMonoid, Reindex), CoveringError> {
        self.carrier.check(piece)?;
        let kept: Vec<usize> = piece.iter().collect();
        let names: Vec<String> = kept.iter().map(|&i| self.carrier.name(i).into()).collect();
        let carrier = SubsetCarrier::new(names)?;
        let reindex = Reindex { kept };
        let basis = self
            .basis
            .iter()
            .map(|b| reindex.cover(&restrict(b, piece, &self.carrier)))
            .collect::<Vec<_>>();
        let m = UniformMonoid::new(carrier, basis)?;
        Ok((m, reindex))
    }

    /// [`LocalCovers`] view: the covers of a piece are restrictions of the
    /// meet closure.
    pub fn local_covers(&self) -> UniformCovers<'_> {
        UniformCovers {
            monoid: self,
            pool: self.meet_closure(),
        }
    }

    /// Noetherian witness for `v ∈ λm`.
    pub fn witness_tree(
        &self,
        v: &Cover<PointSet>,
    ) -> Result<Option<NoetherianTree<PointSet>>, CoveringError> {
        self.check_cover(v)?;
        let sys = self.local_covers();
        let pieces = reachable_pieces(&sys, self.carrier.full(), 1 << 16)
            .map_err(|e| match e {
                ReachError::Limit(limit) => CoveringError::LimitExceeded {
                    what: "pieces",
                    limit,
                },
                ReachError::Enumerator(e) => match e {},
            })?;
        witness_search(&sys, v.members(), pieces.len()).map_err(|e| match e {})
    }

    /// The relation `R(A, U)`: some member of the filter restricts on `A` to a
    /// refinement of `U`, over the preorder of all subsets.
    pub fn induced_relation(&self) -> Result<InducedRelation, CoveringError> {
        if self.carrier.len() > 10 {
            return Err(CoveringError::LimitExceeded {
                what: "points for the subset preorder",
                limit: 10,
            });
        }
        let subsets: Vec<PointSet> = self.carrier.subsets().collect();
        let names: Vec<String> = subsets.iter().map(|&s| self.carrier.set_name(s)).collect();
        let le: Vec<Vec<bool>> = subsets
            .iter()
            .map(|&a| subsets.iter().map(|&b| a.is_subset(b)).collect())
            .collect();
        let order = Preorder::from_matrix(&names, &le)?;
        let elem_of: BTreeMap<PointSet, ElemId> = subsets
            .iter()
            .zip(&names)
            .map(|(&s, n)| (s, order.index_of(n).expect("named subset")))
            .collect();
        let mut set_of = alloc::vec![PointSet::EMPTY; subsets.len()];
        for (&s, &e) in &elem_of {
            set_of[e.index()] = s;
        }
        let mc = self.meet_closure();
        let mut pairs = Vec::new();
        for &a in &subsets {
            for w in &mc {
                let cover = Cover::raw(w.members().iter().map(|m| elem_of[&m.intersection(a)]));
                pairs.push((elem_of[&a], cover));
            }
        }
        let relation = CoveringRelation::new(order, pairs)?;
        Ok(InducedRelation {
            relation,
            elem_of,
            set_of,
        })
    }
}

/// Point re-indexing from a carrier onto the sub-carrier of some points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reindex {
    kept: Vec<usize>,
}

impl Reindex {
    pub fn set(&self, s: PointSet) -> PointSet {
        PointSet::from_indices(
            self.kept
                .iter()
                .enumerate()
                .filter(|(_, &old)| s.contains(old))
                .map(|(new, _)| new),
        )
    }

    pub fn cover(&self, u: &Cover<PointSet>) -> Cover<PointSet> {
        Cover::raw(u.members().iter().map(|&m| self.set(m)).filter(|m| !m.is_empty()))
    }
}

/// [`UniformMonoid::induced_relation`] with the subset bookkeeping.
#[derive(Clone, Debug)]
pub struct InducedRelation {
    pub relation: CoveringRelation,
    pub elem_of: BTreeMap<PointSet, ElemId>,
    pub set_of: Vec<PointSet>,
}

impl InducedRelation {
    pub fn cover(&self, u: &Cover<PointSet>) -> Cover<ElemId> {
        Cover::raw(u.members().iter().map(|m| self.elem_of[m]))
    }
}

pub fn cover_name(carrier: &SubsetCarrier, c: &Cover<PointSet>) -> String {
    let mut out = String::from("{");
    for (k, &m) in c.members().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&carrier.set_name(m));
    }
    out.push('}');
    out
}

/// [`LocalCovers`] view of a [`UniformMonoid`].
pub struct UniformCovers<'a> {
    monoid: &'a UniformMonoid,
    pool: Vec<Cover<PointSet>>,
}

impl LocalCovers for UniformCovers<'_> {
    type Piece = PointSet;
    type Error = core::convert::Infallible;

    fn root(&self) -> PointSet {
        self.monoid.carrier.full()
    }

    fn le(&self, a: PointSet, b: PointSet) -> bool {
        a.is_subset(b)
    }

    fn is_void(&self, p: PointSet) -> bool {
        p.is_empty()
    }

    fn covers_of(&self, p: PointSet) -> Result<Vec<Vec<PointSet>>, Self::Error> {
        let set: BTreeSet<Cover<PointSet>> = self
            .pool
            .iter()
            .map(|w| restrict(w, p, &self.monoid.carrier))
            .collect();
        Ok(set.into_iter().map(|c| c.members().to_vec()).collect())
    }
}

/// Finite lists of covers for each piece of a (possibly infinite) structure.
pub trait LocalCovers {
    type Piece: Copy + Ord + fmt::Debug;
    type Error;

    fn root(&self) -> Self::Piece;
    fn le(&self, a: Self::Piece, b: Self::Piece) -> bool;

    /// Pieces that need no covering (the empty set).
    fn is_void(&self, _p: Self::Piece) -> bool {
        false
    }

    fn covers_of(&self, p: Self::Piece) -> Result<Vec<Vec<Self::Piece>>, Self::Error>;
}

/// `p` is void or lies below a member of `target`.
pub fn inside_target<S: LocalCovers>(sys: &S, p: S::Piece, target: &[S::Piece]) -> bool {
    sys.is_void(p) || target.iter().any(|&t| sys.le(p, t))
}

/// A well-founded tree of pieces; a node's children form one of its covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherianTree<P> {
    pub node: P,
    pub children: Vec<NoetherianTree<P>>,
}

impl<P: Copy + Ord> NoetherianTree<P> {
    pub fn leaf(node: P) -> Self {
        NoetherianTree {
            node,
            children: Vec::new(),
        }
    }

    /// Length of the longest branch; a single node has depth 0.
    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(NoetherianTree::size).sum::<usize>()
    }

    /// `End(T)`: the leaves, sorted.
    pub fn leaves(&self) -> Vec<P> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<P>) {
        if self.children.is_empty() {
            out.push(self.node);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessDefect<P> {
    WrongRoot(P),
    /// Children of this node are not one of its local covers.
    NotALocalCover(P),
    /// A leaf outside every target member.
    LeafOutsideTarget(P),
}

/// Checks the three witness conditions: the root is the top piece, each
/// internal node is covered by its children through a local cover, and the
/// leaves refine `target`.
pub fn check_witness<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    tree: &NoetherianTree<S::Piece>,
) -> Result<Result<(), WitnessDefect<S::Piece>>, S::Error> {
    if tree.node != sys.root() {
        return Ok(Err(WitnessDefect::WrongRoot(tree.node)));
    }
    check_subtree(sys, target, tree)
}

fn check_subtree<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    tree: &NoetherianTree<S::Piece>,
) -> Result<Result<(), WitnessDefect<S::Piece>>, S::Error> {
    if tree.children.is_empty() {
        if inside_target(sys, tree.node, target) {
            return Ok(Ok(()));
        }
        return Ok(Err(WitnessDefect::LeafOutsideTarget(tree.node)));
    }
    let mut kids: Vec<S::Piece> = tree.children.iter().map(|c| c.node).collect();
    kids.sort();
    kids.dedup();
    let ok = sys.covers_of(tree.node)?.into_iter().any(|mut c| {
        c.sort();
        c == kids
    });
    if !ok {
        return Ok(Err(WitnessDefect::NotALocalCover(tree.node)));
    }
    for c in &tree.children {
        if let Err(d) = check_subtree(sys, target, c)? {
            return Ok(Err(d));
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachError<E> {
    Limit(usize),
    Enumerator(E),
}

/// Every piece reachable from `from` through local covers, sorted.
pub fn reachable_pieces<S: LocalCovers>(
    sys: &S,
    from: S::Piece,
    limit: usize,
) -> Result<Vec<S::Piece>, ReachError<S::Error>> {
    let mut seen = BTreeSet::new();
    let mut todo = alloc::vec![from];
    seen.insert(from);
    while let Some(p) = todo.pop() {
        for c in sys.covers_of(p).map_err(ReachError::Enumerator)? {
            for q in c {
                if seen.insert(q) {
                    if seen.len() > limit {
                        return Err(ReachError::Limit(limit));
                    }
                    todo.push(q);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Searches for a Noetherian tree of depth at most `max_depth` rooted at the
/// top piece whose leaves refine `target`, deepening one level at a time.
/// Failed `(piece, depth)` queries are memoized.
pub fn witness_search<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    max_depth: usize,
) -> Result<Option<NoetherianTree<S::Piece>>, S::Error> {
    let mut memo: BTreeMap<(S::Piece, usize), Option<Vec<S::Piece>>> = BTreeMap::new();
    let root = sys.root();
    for d in 0..=max_depth {
        if search(sys, target, root, d, &mut memo)? {
            return Ok(Some(build(sys, target, root, d, &memo)));
        }
    }
    Ok(None)
}

type Memo<P> = BTreeMap<(P, usize), Option<Vec<P>>>;

fn search<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    p: S::Piece,
    d: usize,
    memo: &mut Memo<S::Piece>,
) -> Result<bool, S::Error> {
    if inside_target(sys, p, target) {
        return Ok(true);
    }
    if d == 0 {
        return Ok(false);
    }
    if let Some(hit) = memo.get(&(p, d)) {
        return Ok(hit.is_some());
    }
    // cycles through p at the same depth fail
    memo.insert((p, d), None);
    for c in sys.covers_of(p)? {
        if c.len() == 1 && c[0] == p {
            continue;
        }
        let mut all = true;
        for &q in &c {
            if !search(sys, target, q, d - 1, memo)? {
                all = false;
                break;
            }
        }
        if all {
            memo.insert((p, d), Some(c));
            return Ok(true);
        }
    }
    Ok(false)
}

fn build<S: LocalCovers>(
    sys: &S,
    target: &[S::Piece],
    p: S::Piece,
    d: usize,
    memo: &Memo<S::Piece>,
) -> NoetherianTree<S::Piece> {
    if inside_target(sys, p, target) || d == 0 {
        return NoetherianTree::leaf(p);
    }
    let c = memo
        .get(&(p, d))
        .and_then(|c| c.clone())
        .expect("successful search leaves a choice");
    NoetherianTree {
        node: p,
        children: c.into_iter().map(|q| build(sys, target, q, d - 1, memo)).collect(),
    }
}

/// Outcome of a depth-bounded membership search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bounded<P> {
    Proven(NoetherianTree<P>),
    Unknown,
}

/// Semi-decides `v ∈ λμ` for a lazily enumerated structure. Never reports a
/// negative: an exhausted search is [`Bounded::Unknown`].
pub fn bounded_member<S: LocalCovers>(
    gen: &S,
    v: &[S::Piece],
    depth: usize,
) -> Result<Bounded<S::Piece>, S::Error> {
    Ok(match witness_search(gen, v, depth)? {
        Some(t) => Bounded::Proven(t),
        None => Bounded::Unknown,
    })
}

/// Least-fixpoint ranks over `pieces`: rank 0 inside `target`, rank `k + 1`
/// when some local cover has all members of rank at most `k`. Pieces absent
/// from the map are not reached.
pub fn winning_ranks<S: LocalCovers>(
    sys: &S,
    pieces: &[S::Piece],
    target: &[S::Piece],
) -> Result<BTreeMap<S::Piece, usize>, S::Error> {
    let mut rank: BTreeMap<S::Piece, usize> = BTreeMap::new();
    for &p in pieces {
        if inside_target(sys, p, target) {
            rank.insert(p, 0);
        }
    }
    let covers: BTreeMap<S::Piece, Vec<Vec<S::Piece>>> = pieces
        .iter()
        .map(|&p| sys.covers_of(p).map(|c| (p, c)))
        .collect::<Result<_, _>>()?;
    let mut level = 0;
    loop {
        level += 1;
        let fresh: Vec<S::Piece> = pieces
            .iter()
            .copied()
            .filter(|p| !rank.contains_key(p))
            .filter(|p| {
                covers[p].iter().any(|c| {
                    c.iter()
                        .all(|q| inside_target(sys, *q, target) || rank.get(q).is_some_and(|&r| r < level))
                })
            })
            .collect();
        if fresh.is_empty() {
            return Ok(rank);
        }
        for p in fresh {
            rank.insert(p, level);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn c4_preorder() -> Preorder {
        Preorder::from_relation(
            &["T", "b", "c", "d", "e"],
            &[("b", "T"), ("c", "T"), ("d", "b"), ("e", "c")],
        )
        .unwrap()
    }

    pub(crate) fn c4_generators() -> CoveringRelation {
        let p = c4_preorder();
        let id = |n: &str| p.index_of(n).unwrap();
        let pairs = vec![
            (id("T"), p.cover_of_names(&["b", "c"]).unwrap()),
            (id("b"), p.cover_of_names(&["d"]).unwrap()),
            (id("c"), p.cover_of_names(&["e"]).unwrap()),
        ];
        CoveringRelation::new(p, pairs).unwrap()
    }

    fn ps(ix: &[usize]) -> PointSet {
        PointSet::from_indices(ix.iter().copied())
    }

    fn cov(sets: &[&[usize]]) -> Cover<PointSet> {
        Cover::raw(sets.iter().map(|s| ps(s)))
    }

    fn three() -> SubsetCarrier {
        SubsetCarrier::new(["0", "1", "2"]).unwrap()
    }

    #[test]
    fn audit_finds_missing_composite() {
        let r = c4_generators();
        assert!(!r.is_closed());
        let report = audit_axioms(&r);
        let p = r.carrier();
        let want = (p.index_of("T").unwrap(), p.cover_of_names(&["d", "e"]).unwrap());
        assert!(report.c4.contains(&want), "{report:?}");
    }

    #[test]
    fn c1_section_empty_when_reflexive_pairs_present() {
        let p = c4_preorder();
        let pairs: Vec<_> = p.elements().map(|a| (a, Cover::singleton(a))).collect();
        let r = CoveringRelation::new(p, pairs).unwrap();
        assert!(audit_axioms(&r).c1.is_empty());
    }

    #[test]
    fn saturation_adds_the_composite() {
        let (closed, trace) = saturate(&c4_generators());
        let p = closed.carrier();
        let t = p.index_of("T").unwrap();
        assert!(closed.is_closed());
        assert!(closed.holds(t, &p.cover_of_names(&["d", "e"]).unwrap()));
        assert!(audit_axioms(&closed).is_empty());
        assert_eq!(trace.stages.last().unwrap().added, vec![]);
    }

    #[test]
    fn saturation_of_nothing_is_reflexive() {
        let p = c4_preorder();
        let (closed, _) = saturate(&CoveringRelation::new(p.clone(), vec![]).unwrap());
        for a in p.elements() {
            assert_eq!(closed.finest(a).unwrap(), &Cover::singleton(a));
        }
    }

    #[test]
    fn saturating_a_closed_relation_is_idempotent() {
        let (closed, _) = saturate(&c4_generators());
        let (again, trace) = saturate(&closed);
        assert_eq!(again, closed);
        assert_eq!(trace.stages.len(), 1);
        assert!(trace.stages[0].added.is_empty());
    }

    #[test]
    fn c4_fixture_monoid_has_rank_one() {
        let m = RelationalMonoid::from_relation(&c4_generators());
        assert!(!m.is_locally_fine().unwrap());
        assert_eq!(m.rank().unwrap(), 1);
        let de = m.carrier().cover_of_names(&["d", "e"]).unwrap();
        assert!(!m.member(&de).unwrap());
        let (l, _) = m.lambda_close(Derivative::Slowed).unwrap();
        assert!(l.member(&de).unwrap());
        let tree = m.witness_tree(&de).unwrap().unwrap();
        assert_eq!(tree.depth(), 2);
    }

    #[test]
    fn meet_closed_uniform_monoid_collapses() {
        let c = three();
        let m = UniformMonoid::new(c, [cov(&[&[0, 1], &[1, 2]]), cov(&[&[0], &[1, 2]])]).unwrap();
        let (l, trace) = m.lambda_close(Derivative::Slowed).unwrap();
        assert_eq!(trace.rank(), 0);
        assert_eq!(l.basis(), &m.meet_closure()[..]);
        assert!(m.is_locally_fine().unwrap());
    }

    #[test]
    fn trivial_monoid() {
        let m = UniformMonoid::new(three(), []).unwrap();
        assert_eq!(m.rank().unwrap(), 0);
        assert!(m.member(&m.top_cover(), true).unwrap());
        assert!(!m.member(&cov(&[&[0], &[1], &[2]]), true).unwrap());
        assert!(m.is_normal());
    }

    #[test]
    fn basis_must_cover_the_points() {
        let err = UniformMonoid::new(three(), [cov(&[&[0, 1]])]).unwrap_err();
        assert!(matches!(err, CoveringError::NotACoverOfTop(_)));
    }

    #[test]
    fn witness_shapes() {
        let u = cov(&[&[0, 1], &[1, 2]]);
        let m = UniformMonoid::new(three(), [u.clone()]).unwrap();
        let t = m.witness_tree(&m.top_cover()).unwrap().unwrap();
        assert_eq!(t.depth(), 0);
        let t = m.witness_tree(&u).unwrap().unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.leaves(), u.members().to_vec());
        assert!(m.witness_tree(&cov(&[&[0], &[1], &[2]])).unwrap().is_none());
    }

    #[test]
    fn normality_examples() {
        let all: Vec<Cover<PointSet>> = vec![
            cov(&[&[0], &[1], &[2]]),
            cov(&[&[0, 1], &[1, 2]]),
            cov(&[&[0, 1], &[2]]),
        ];
        assert!(UniformMonoid::new(three(), all).unwrap().is_normal());
        let chain = UniformMonoid::new(three(), [cov(&[&[0, 1], &[1, 2]])]).unwrap();
        assert!(!chain.is_normal());
    }

    #[test]
    fn bounded_search_at_depth_zero() {
        let m = UniformMonoid::new(three(), [cov(&[&[0], &[1, 2]])]).unwrap();
        let sys = m.local_covers();
        assert!(matches!(
            bounded_member(&sys, m.top_cover().members(), 0).unwrap(),
            Bounded::Proven(_)
        ));
        assert_eq!(
            bounded_member(&sys, cov(&[&[0], &[1, 2]]).members(), 0).unwrap(),
            Bounded::Unknown
        );
        assert!(matches!(
            bounded_member(&sys, cov(&[&[0], &[1, 2]]).members(), 3).unwrap(),
            Bounded::Proven(_)
        ));
    }

    #[test]
    fn empty_space_has_only_the_empty_cover() {
        let c = SubsetCarrier::new(Vec::<String>::new()).unwrap();
        let m = UniformMonoid::new(c, []).unwrap();
        assert!(m.top_cover().is_empty());
        assert!(m.member(&Cover::empty(), true).unwrap());
        assert!(m.witness_tree(&Cover::empty()).unwrap().is_some());
    }

    #[test]
    fn restriction_reindexes_points() {
        let m = UniformMonoid::new(three(), [cov(&[&[0, 1], &[1, 2]])]).unwrap();
        let (r, ix) = m.restrict_to(ps(&[1, 2])).unwrap();
        assert_eq!(r.carrier().names(), &["1", "2"]);
        assert_eq!(ix.set(ps(&[2])), ps(&[1]));
        assert_eq!(r.basis(), &[r.top_cover()]);
    }
}
