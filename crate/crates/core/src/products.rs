//! Products of covering monoids and coproducts of frames.
//!
//! The coproduct of finite frames is built from generators: on the product `B`
//! of the frames' orders, each generator splits an element along a single
//! coordinate. The generators are saturated under the covering axioms and
//! the quotient is represented by saturated subsets `sat(U) = {b : Cov(b, U)}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::covering::{
    saturate, CoveringError, CoveringRelation, Derivative, RelationalMonoid, UniformMonoid,
    ANTICHAIN_LIMIT,
};
use crate::frames::{
    frame_from_space, frame_iso, is_spatial, points_of, product_space, Frame, FrameError,
    SpaceDescription,
};
use crate::order::{
    normalize, refines_unchecked, restrict, Carrier, Cover, ElemId, OrderError, PointSet,
    Preorder, SubsetCarrier,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductError {
    Order(OrderError),
    Frame(FrameError),
    Covering(CoveringError),
    NoFactors,
    /// The factor at this position is not T0.
    NotT0(usize),
    /// The factor at this position carries no regularity flag.
    RegularityFlagMissing(usize),
    /// Factor carriers do not match the coproduct's.
    CarrierMismatch,
    LimitExceeded { what: &'static str, limit: usize },
}

impl fmt::Display for ProductError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductError::Order(e) => e.fmt(f),
            ProductError::Frame(e) => e.fmt(f),
            ProductError::Covering(e) => e.fmt(f),
            ProductError::NoFactors => f.write_str("empty factor list"),
            ProductError::NotT0(i) => write!(f, "factor {i} is not T0"),
            ProductError::RegularityFlagMissing(i) => {
                write!(f, "factor {i} has no regularity flag")
            }
            ProductError::CarrierMismatch => f.write_str("factor carriers do not match"),
            ProductError::LimitExceeded { what, limit } => {
                write!(f, "internal limit exceeded: more than {limit} {what}")
            }
        }
    }
}

impl core::error::Error for ProductError {}

impl From<OrderError> for ProductError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::LimitExceeded { what, limit } => ProductError::LimitExceeded { what, limit },
            other => ProductError::Order(other),
        }
    }
}

impl From<FrameError> for ProductError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::Order(o) => o.into(),
            other => ProductError::Frame(other),
        }
    }
}

impl From<CoveringError> for ProductError {
    fn from(e: CoveringError) -> Self {
        match e {
            CoveringError::LimitExceeded { what, limit } => {
                ProductError::LimitExceeded { what, limit }
            }
            CoveringError::Order(o) => o.into(),
            other => ProductError::Covering(other),
        }
    }
}

const SET_LIMIT: usize = 64;

fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let mut out = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(p.as_ref());
    }
    out.push(')');
    out
}

fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for &n in sizes {
        let mut next = Vec::with_capacity(acc.len() * n);
        for t in &acc {
            for x in 0..n {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        acc = next;
    }
    acc
}

/// Componentwise product of preorders; `coords[b][i]` is the `i`-th
/// coordinate of `b`.
pub fn product_preorder(factors: &[&Preorder]) -> Result<(Preorder, Vec<Vec<ElemId>>), ProductError> {
    if factors.is_empty() {
        return Err(ProductError::NoFactors);
    }
    let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
    let ts = tuples(&sizes);
    let names: Vec<String> = ts
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .zip(factors)
                .map(|(&x, p)| p.name(ElemId(x as u32)))
                .collect();
            tuple_name(&parts)
        })
        .collect();
    let le: Vec<Vec<bool>> = ts
        .iter()
        .map(|a| {
            ts.iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .zip(factors)
                        .all(|((&x, &y), p)| p.le(ElemId(x as u32), ElemId(y as u32)))
                })
                .collect()
        })
        .collect();
    let order = Preorder::from_matrix(&names, &le)?;
    let mut coords = alloc::vec![Vec::new(); ts.len()];
    for (t, n) in ts.iter().zip(&names) {
        let b = order.index_of(n).expect("named tuple");
        coords[b.index()] = t.iter().map(|&x| ElemId(x as u32)).collect();
    }
    Ok((order, coords))
}

/// Product of finite point sets, points named `(x,y,..)`.
pub fn product_carrier(
    factors: &[&SubsetCarrier],
) -> Result<(SubsetCarrier, Vec<Vec<usize>>), ProductError> {
    if factors.is_empty() {
        return Err(ProductError::NoFactors);
    }
    let total = factors.iter().map(|c| c.len()).try_fold(1usize, |acc, n| {
        acc.checked_mul(n).filter(|&t| t <= SET_LIMIT)
    });
    if total.is_none() {
        return Err(ProductError::LimitExceeded {
            what: "product points",
            limit: SET_LIMIT,
        });
    }
    let sizes: Vec<usize> = factors.iter().map(|c| c.len()).collect();
    let ts = tuples(&sizes);
    let name_of = |t: &[usize]| {
        let parts: Vec<&str> = t.iter().zip(factors).map(|(&x, c)| c.name(x)).collect();
        tuple_name(&parts)
    };
    let carrier = SubsetCarrier::new(ts.iter().map(|t| name_of(t)))?;
    let mut coords = alloc::vec![Vec::new(); ts.len()];
    for t in &ts {
        coords[carrier.index_of(&name_of(t)).expect("named point")] = t.clone();
    }
    Ok((carrier, coords))
}

/// A product of uniform monoids with its coordinate bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMonoid {
    pub monoid: UniformMonoid,
    /// `coords[p][i]`: index in factor `i` of product point `p`.
    pub coords: Vec<Vec<usize>>,
}

impl ProductMonoid {
    /// `π_i^{-1}[s]`.
    pub fn pullback(&self, i: usize, s: PointSet) -> PointSet {
        PointSet::from_indices(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| s.contains(c[i]))
                .map(|(p, _)| p),
        )
    }

    /// `Π sets[i]`.
    pub fn rectangle(&self, sets: &[PointSet]) -> PointSet {
        PointSet::from_indices(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| c.iter().zip(sets).all(|(&x, s)| s.contains(x)))
                .map(|(p, _)| p),
        )
    }
}

/// Basis: all finite meets of pullbacks of factor basis covers.
pub fn product_monoid(ms: &[UniformMonoid]) -> Result<ProductMonoid, ProductError> {
    let carriers: Vec<&SubsetCarrier> = ms.iter().map(UniformMonoid::carrier).collect();
    let (carrier, coords) = product_carrier(&carriers)?;
    let shell = ProductMonoid {
        monoid: UniformMonoid::new(carrier.clone(), [])?,
        coords,
    };
    let mut pullbacks = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        for b in m.basis() {
            pullbacks.push(Cover::raw(b.members().iter().map(|&s| shell.pullback(i, s))));
        }
    }
    let generated = UniformMonoid::new(carrier.clone(), pullbacks)?;
    let basis = generated.meet_closure();
    Ok(ProductMonoid {
        monoid: UniformMonoid::new(carrier, basis)?,
        coords: shell.coords,
    })
}

/// `O(X)*`: covers of the points with an open refinement, generated by the
/// cover of minimal neighbourhoods.
pub fn fine_monoid(s: &SpaceDescription) -> UniformMonoid {
    let cover = Cover::raw((0..s.carrier().len()).map(|x| s.minimal_neighbourhood(x)));
    UniformMonoid::new(s.carrier().clone(), [cover]).expect("neighbourhoods cover the space")
}

/// `O(X)`: pairs `(U, G)` with `U` open and `G` a cover of `U` with an open
/// refinement, over the preorder of opens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineCovering {
    pub monoid: RelationalMonoid,
    /// Open set behind each element.
    pub opens: Vec<PointSet>,
}

pub fn fine_covering_monoid(s: &SpaceDescription) -> Result<FineCovering, ProductError> {
    let names: Vec<String> = s.opens().iter().map(|&o| s.carrier().set_name(o)).collect();
    let le: Vec<Vec<bool>> = s
        .opens()
        .iter()
        .map(|&a| s.opens().iter().map(|&b| a.is_subset(b)).collect())
        .collect();
    let order = Preorder::from_matrix(&names, &le)?;
    let mut opens = alloc::vec![PointSet::EMPTY; names.len()];
    let mut elem_of = BTreeMap::new();
    for (&o, n) in s.opens().iter().zip(&names) {
        let e = order.index_of(n).expect("named open");
        opens[e.index()] = o;
        elem_of.insert(o, e);
    }
    let base = order
        .elements()
        .map(|e| {
            let u = opens[e.index()];
            alloc::vec![Cover::raw(u.iter().map(|x| elem_of[&s.minimal_neighbourhood(x)]))]
        })
        .collect();
    Ok(FineCovering {
        monoid: RelationalMonoid::from_covers(order, base),
        opens,
    })
}

/// Product of relational monoids on the componentwise product preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalProduct {
    pub monoid: RelationalMonoid,
    pub coords: Vec<Vec<ElemId>>,
}

/// `(a, U)` holds when, for some choice of covers `(a_i, U_i)` of the
/// factors, the meet of the insertions `{(u_1,..,u_n) : u_i ∈ U_i}`
/// refines `U`.
pub fn product_relation(ms: &[RelationalMonoid]) -> Result<RelationalProduct, ProductError> {
    let orders: Vec<&Preorder> = ms.iter().map(RelationalMonoid::carrier).collect();
    let (order, coords) = product_preorder(&orders)?;
    let index: BTreeMap<&[ElemId], ElemId> = coords
        .iter()
        .enumerate()
        .map(|(b, c)| (c.as_slice(), ElemId(b as u32)))
        .collect();
    let mut base = Vec::with_capacity(coords.len());
    for c in &coords {
        let options: Vec<Vec<&Cover<ElemId>>> = c
            .iter()
            .zip(ms)
            .map(|(&x, m)| m.base_covers(x).iter().collect())
            .collect();
        let mut covers = Vec::new();
        for choice in tuples(&options.iter().map(Vec::len).collect::<Vec<_>>()) {
            let picked: Vec<&[ElemId]> = choice
                .iter()
                .zip(&options)
                .map(|(&k, o)| o[k].members())
                .collect();
            let sizes: Vec<usize> = picked.iter().map(|m| m.len()).collect();
            let members = tuples(&sizes).into_iter().map(|t| {
                let key: Vec<ElemId> = t.iter().zip(&picked).map(|(&k, m)| m[k]).collect();
                index[key.as_slice()]
            });
            covers.push(Cover::raw(members));
        }
        base.push(covers);
    }
    drop(index);
    Ok(RelationalProduct {
        monoid: RelationalMonoid::from_covers(order, base),
        coords,
    })
}

/// `Cov_L(a, U) ⇔ a ≤ ⋁U`, stored for every antichain `U`.
pub fn canonical_cov(f: &Frame) -> Result<CoveringRelation, ProductError> {
    let order = f.order().clone();
    let ants = order.antichains(ANTICHAIN_LIMIT)?;
    let mut pairs = Vec::new();
    for a in f.elements() {
        for u in &ants {
            if f.le(a, f.join_all(u.members().iter().copied())) {
                pairs.push((a, u.clone()));
            }
        }
    }
    Ok(CoveringRelation::new(order, pairs)?)
}

/// The canonical relation of `f` as a covering monoid.
pub fn canonical_monoid(f: &Frame) -> Result<RelationalMonoid, ProductError> {
    Ok(RelationalMonoid::from_relation(&canonical_cov(f)?))
}

/// The locale of a covering relation: saturated subsets of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedLocale {
    relation: CoveringRelation,
    elements: Vec<PointSet>,
}

/// [`GeneratedLocale::to_frame`] with the element correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocaleFrame {
    pub frame: Frame,
    /// Saturated set behind each frame element.
    pub sets: Vec<PointSet>,
}

impl LocaleFrame {
    pub fn element_of(&self, s: PointSet) -> Option<ElemId> {
        self.sets.iter().position(|&x| x == s).map(|i| ElemId(i as u32))
    }
}

impl GeneratedLocale {
    pub fn relation(&self) -> &CoveringRelation {
        &self.relation
    }

    pub fn base(&self) -> &Preorder {
        self.relation.carrier()
    }

    /// Saturated subsets, sorted.
    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `{b : Cov(b, U)}`
    pub fn sat(&self, u: &Cover<ElemId>) -> PointSet {
        PointSet::from_indices(
            self.base()
                .elements()
                .filter(|&b| self.relation.holds(b, u))
                .map(ElemId::index),
        )
    }

    /// `sat` of the cover made of the elements of `s`.
    pub fn sat_set(&self, s: PointSet) -> PointSet {
        self.sat(&set_cover(s))
    }

    pub fn top(&self) -> PointSet {
        self.sat(&Cover::singleton(self.base().top()))
    }

    pub fn join(&self, a: PointSet, b: PointSet) -> PointSet {
        self.sat_set(a.union(b))
    }

    pub fn meet(&self, a: PointSet, b: PointSet) -> PointSet {
        self.sat_set(a.intersection(b))
    }

    /// Name listing the maximal members of a saturated set.
    pub fn element_name(&self, s: PointSet) -> String {
        self.base().cover_name(&normalize(&set_cover(s), self.base()))
    }

    pub fn to_frame(&self) -> Result<LocaleFrame, ProductError> {
        let names: Vec<String> = self.elements.iter().map(|&s| self.element_name(s)).collect();
        let le: Vec<Vec<bool>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| a.is_subset(b)).collect())
            .collect();
        let order = Preorder::from_matrix(&names, &le)?;
        let mut sets = alloc::vec![PointSet::EMPTY; names.len()];
        for (&s, n) in self.elements.iter().zip(&names) {
            sets[order.index_of(n).expect("named element").index()] = s;
        }
        Ok(LocaleFrame {
            frame: Frame::from_order(order)?,
            sets,
        })
    }
}

fn set_cover(s: PointSet) -> Cover<ElemId> {
    Cover::raw(s.iter().map(|i| ElemId(i as u32)))
}

/// The locale of `r`, saturating first when `r` is not closed.
pub fn locale_from_cov(r: &CoveringRelation) -> Result<GeneratedLocale, ProductError> {
    if r.is_closed() {
        locale_of(r.clone())
    } else {
        locale_of(saturate(r).0)
    }
}

fn locale_of(relation: CoveringRelation) -> Result<GeneratedLocale, ProductError> {
    let p = relation.carrier();
    if p.len() > SET_LIMIT {
        return Err(ProductError::LimitExceeded {
            what: "locale base elements",
            limit: SET_LIMIT,
        });
    }
    let mut shell = GeneratedLocale {
        relation,
        elements: Vec::new(),
    };
    let ants = shell.base().antichains(ANTICHAIN_LIMIT)?;
    let set: BTreeSet<PointSet> = ants.iter().map(|u| shell.sat(u)).collect();
    shell.elements = set.into_iter().collect();
    Ok(shell)
}

/// The coproduct of finite frames with the map `φ(b) = sat({b})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub locale: GeneratedLocale,
    pub generators: CoveringRelation,
    /// `coords[b][i]`: the `i`-th frame element of `b`.
    pub coords: Vec<Vec<ElemId>>,
    tops: Vec<ElemId>,
}

impl Coproduct {
    pub fn base(&self) -> &Preorder {
        self.locale.base()
    }

    pub fn phi(&self, b: ElemId) -> PointSet {
        self.locale.sat(&Cover::singleton(b))
    }

    /// `q_i(x)`: `x` in coordinate `i`, top elsewhere.
    pub fn insertion(&self, i: usize, x: ElemId) -> ElemId {
        let pos = self
            .coords
            .iter()
            .position(|c| {
                c.iter()
                    .enumerate()
                    .all(|(j, &y)| if j == i { y == x } else { y == self.tops[j] })
            })
            .expect("insertions exist");
        ElemId(pos as u32)
    }

    pub fn factor_count(&self) -> usize {
        self.tops.len()
    }
}

/// Generators: `(b, {b[i:=u] : u ∈ U})` for every `b`, coordinate `i` and
/// antichain `U` of frame `i` with `b_i ≤ ⋁U`.
pub fn coproduct_generators(
    fs: &[Frame],
) -> Result<(CoveringRelation, Vec<Vec<ElemId>>), ProductError> {
    generators_on(fs, fs.len())
}

fn generators_on(
    fs: &[Frame],
    coordinates: usize,
) -> Result<(CoveringRelation, Vec<Vec<ElemId>>), ProductError> {
    let orders: Vec<&Preorder> = fs.iter().map(Frame::order).collect();
    let (order, coords) = product_preorder(&orders)?;
    if order.len() > SET_LIMIT {
        return Err(ProductError::LimitExceeded {
            what: "base elements",
            limit: SET_LIMIT,
        });
    }
    let index: BTreeMap<Vec<ElemId>, ElemId> = coords
        .iter()
        .enumerate()
        .map(|(b, c)| (c.clone(), ElemId(b as u32)))
        .collect();
    let ants: Vec<Vec<Cover<ElemId>>> = fs
        .iter()
        .map(|f| f.order().antichains(ANTICHAIN_LIMIT))
        .collect::<Result<_, _>>()?;
    let mut pairs = Vec::new();
    for (b, c) in coords.iter().enumerate() {
        for (i, f) in fs.iter().enumerate().take(coordinates) {
            for u in &ants[i] {
                if f.le(c[i], f.join_all(u.members().iter().copied())) {
                    let split = u.members().iter().map(|&x| {
                        let mut t = c.clone();
                        t[i] = x;
                        index[&t]
                    });
                    pairs.push((ElemId(b as u32), Cover::raw(split)));
                }
            }
        }
    }
    Ok((CoveringRelation::new(order, pairs)?, coords))
}

pub fn coproduct_frames(fs: &[Frame]) -> Result<Coproduct, ProductError> {
    coproduct_on(fs, fs.len())
}

/// Negative control: saturates only the generators splitting the first
/// `coordinates` coordinates.
pub fn coproduct_frames_truncated(fs: &[Frame], coordinates: usize) -> Result<Coproduct, ProductError> {
    coproduct_on(fs, coordinates)
}

fn coproduct_on(fs: &[Frame], coordinates: usize) -> Result<Coproduct, ProductError> {
    let (generators, coords) = generators_on(fs, coordinates)?;
    let (closed, _) = saturate(&generators);
    Ok(Coproduct {
        locale: locale_of(closed)?,
        generators,
        coords,
        tops: fs.iter().map(Frame::top).collect(),
    })
}

/// Failures of the embedding properties of `φ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbedReport {
    /// Pairs without bottom coordinates where `b ≤ b'` and `φb ⊆ φb'` disagree.
    pub order_failures: Vec<(ElemId, ElemId)>,
    /// Pairs of `λΠ` whose image is not a cover in the locale.
    pub homomorphism_failures: Vec<(ElemId, Cover<ElemId>)>,
    /// Covers of the locale not refined by the image of the finest cover of top.
    pub unrefined_covers: Vec<Vec<PointSet>>,
    /// Elements whose finest covers under the generated relation and `λΠ` differ.
    pub relation_mismatches: Vec<ElemId>,
    pub locale_covers_checked: usize,
}

impl EmbedReport {
    pub fn is_empty(&self) -> bool {
        self.order_failures.is_empty()
            && self.homomorphism_failures.is_empty()
            && self.unrefined_covers.is_empty()
            && self.relation_mismatches.is_empty()
    }
}

/// Checks `φ: λΠ Cov_i → L` against the factor covering monoids `ms`, whose
/// carriers must be the coproduct's factor orders.
pub fn embed_phi_check(ms: &[RelationalMonoid], cp: &Coproduct) -> Result<EmbedReport, ProductError> {
    let prod = product_relation(ms)?;
    if prod.monoid.carrier().names() != cp.base().names() || prod.coords != cp.coords {
        return Err(ProductError::CarrierMismatch);
    }
    let (lambda, _) = prod.monoid.lambda_close(Derivative::Slowed)?;
    let b = cp.base();
    let mut report = EmbedReport::default();

    let bottoms: Vec<ElemId> = ms
        .iter()
        .map(|m| {
            let p = m.carrier();
            p.elements()
                .find(|&x| p.elements().all(|y| p.le(x, y)))
                .expect("frame orders have a bottom")
        })
        .collect();
    let inner: Vec<ElemId> = b
        .elements()
        .filter(|e| cp.coords[e.index()].iter().zip(&bottoms).all(|(x, z)| x != z))
        .collect();
    for &x in &inner {
        for &y in &inner {
            if b.le(x, y) != cp.phi(x).is_subset(cp.phi(y)) {
                report.order_failures.push((x, y));
            }
        }
    }

    for a in b.elements() {
        for u in lambda.base_covers(a) {
            if !cp.phi(a).is_subset(cp.locale.sat(u)) {
                report.homomorphism_failures.push((a, u.clone()));
            }
        }
        let ours = cp.locale.relation().finest(a);
        let theirs = lambda.base_covers(a);
        let agree = match (ours, theirs) {
            (Some(o), [t]) => refines_unchecked(o, t, b) && refines_unchecked(t, o, b),
            _ => false,
        };
        if !agree {
            report.relation_mismatches.push(a);
        }
    }

    let images: Vec<PointSet> = lambda
        .base_covers(b.top())
        .iter()
        .flat_map(|u| u.members().iter().map(|&m| cp.phi(m)))
        .collect();
    let l = &cp.locale;
    let names: Vec<String> = (0..l.len()).map(|i| format!("{i:04}")).collect();
    let le: Vec<Vec<bool>> = l
        .elements()
        .iter()
        .map(|&x| l.elements().iter().map(|&y| x.is_subset(y)).collect())
        .collect();
    let lorder = Preorder::from_matrix(&names, &le)?;
    let set_of = |e: ElemId| l.elements()[lorder.name(e).parse::<usize>().expect("index name")];
    let top = l.top();
    for ant in lorder.antichains(ANTICHAIN_LIMIT)? {
        let members: Vec<PointSet> = ant.members().iter().map(|&e| set_of(e)).collect();
        let union = members.iter().fold(PointSet::EMPTY, |acc, &s| acc.union(s));
        if l.sat_set(union) != top {
            continue;
        }
        report.locale_covers_checked += 1;
        let refined = images
            .iter()
            .all(|&im| members.iter().any(|&v| im.is_subset(v)));
        if !refined {
            report.unrefined_covers.push(members);
        }
    }
    Ok(report)
}

/// Points of the coproduct projected to tuples of factor points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCorrespondence {
    pub coproduct_points: usize,
    pub factor_points: Vec<usize>,
    /// Factor point indices (into [`points_of`]) for each coproduct point.
    pub tuples: Vec<Option<Vec<usize>>>,
    pub bijective: bool,
}

/// `Pt(∐ L_i) → Π Pt(L_i)`, `p ↦ (p ∘ φ ∘ q_i)_i`.
pub fn point_correspondence(fs: &[Frame], cp: &Coproduct) -> Result<PointCorrespondence, ProductError> {
    let lf = cp.locale.to_frame()?;
    let pts = points_of(&lf.frame);
    let factor_pts: Vec<_> = fs.iter().map(points_of).collect();
    let mut tuples_out = Vec::with_capacity(pts.len());
    for p in &pts {
        let mut t = Vec::with_capacity(fs.len());
        for (i, f) in fs.iter().enumerate() {
            let filter: Vec<ElemId> = f
                .elements()
                .filter(|&x| {
                    let img = cp.phi(cp.insertion(i, x));
                    lf.element_of(img).is_some_and(|e| p.contains(e))
                })
                .collect();
            t.push(factor_pts[i].iter().position(|q| q.filter() == filter.as_slice()));
        }
        tuples_out.push(t.into_iter().collect::<Option<Vec<usize>>>());
    }
    let expected: usize = factor_pts.iter().map(Vec::len).product();
    let distinct: BTreeSet<&Vec<usize>> = tuples_out.iter().flatten().collect();
    let bijective = tuples_out.iter().all(Option::is_some)
        && distinct.len() == tuples_out.len()
        && tuples_out.len() == expected;
    Ok(PointCorrespondence {
        coproduct_points: pts.len(),
        factor_points: factor_pts.iter().map(Vec::len).collect(),
        tuples: tuples_out,
        bijective,
    })
}

/// Covers of the `λ`-closed product with no refinement by rectangles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RectReport {
    pub unrefined: Vec<Cover<PointSet>>,
    /// `(rectangle, cover)` pairs whose restriction has no rectangular refinement.
    pub unrefined_restrictions: Vec<(PointSet, Cover<PointSet>)>,
    pub covers_checked: usize,
}

impl RectReport {
    pub fn is_empty(&self) -> bool {
        self.unrefined.is_empty() && self.unrefined_restrictions.is_empty()
    }
}

/// Checks that `λ` of the product of `ms` has a basis of covers by basic
/// rectangles, on the whole space and restricted to each rectangle. Factor
/// opens are the unions of members of factor covers.
pub fn rect_basis_check(ms: &[UniformMonoid]) -> Result<RectReport, ProductError> {
    let pm = product_monoid(ms)?;
    let opens: Vec<Vec<PointSet>> = ms.iter().map(derived_opens).collect();
    let mut rects = BTreeSet::new();
    for choice in tuples(&opens.iter().map(Vec::len).collect::<Vec<_>>()) {
        let sets: Vec<PointSet> = choice.iter().zip(&opens).map(|(&k, o)| o[k]).collect();
        rects.insert(pm.rectangle(&sets));
    }
    let rects: Vec<PointSet> = rects.into_iter().collect();
    rect_basis_report(&pm.monoid, &rects)
}

fn derived_opens(m: &UniformMonoid) -> Vec<PointSet> {
    let mut set: BTreeSet<PointSet> = BTreeSet::new();
    set.insert(PointSet::EMPTY);
    set.insert(m.carrier().full());
    for c in m.meet_closure() {
        for &x in c.members() {
            set.insert(x);
        }
    }
    loop {
        let items: Vec<PointSet> = set.iter().copied().collect();
        let n = set.len();
        for &a in &items {
            for &b in &items {
                set.insert(a.union(b));
            }
        }
        if set.len() == n {
            return set.into_iter().collect();
        }
    }
}

/// [`rect_basis_check`] for an explicit monoid and family of rectangles.
pub fn rect_basis_report(m: &UniformMonoid, rects: &[PointSet]) -> Result<RectReport, ProductError> {
    let c = m.carrier();
    let (l, _) = m.lambda_close(Derivative::Slowed)?;
    let pool = l.meet_closure();
    let mut report = RectReport::default();
    let inside = |w: &Cover<PointSet>, a: PointSet| -> Cover<PointSet> {
        normalize(
            &Cover::raw(rects.iter().copied().filter(|&r| {
                !r.is_empty() && r.is_subset(a) && w.members().iter().any(|&x| r.is_subset(x))
            })),
            c,
        )
    };
    for w in &pool {
        report.covers_checked += 1;
        let r = inside(w, c.full());
        if r.union() != c.full() || !l.member_base(&r)? {
            report.unrefined.push(w.clone());
        }
    }
    for &a in rects {
        if a.is_empty() {
            continue;
        }
        for w in &pool {
            report.covers_checked += 1;
            let target = restrict(w, a, c);
            let r = inside(&target, a);
            let ok = r.union() == a
                && pool
                    .iter()
                    .any(|v| refines_unchecked(&restrict(v, a, c), &r, c));
            if !ok {
                report.unrefined_restrictions.push((a, w.clone()));
            }
        }
    }
    Ok(report)
}

/// Both sides of the product characterization of spatiality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialProductReport {
    /// `λΠ O(X_i) = O(ΠX_i)` on the product preorder.
    pub monoids_equal: bool,
    pub mismatches: Vec<(ElemId, Cover<ElemId>)>,
    pub pairs_checked: usize,
    pub coproduct_spatial: bool,
    /// The coproduct of the topologies is isomorphic to the product topology.
    pub coproduct_is_product_topology: bool,
}

impl SpatialProductReport {
    /// The two verdicts agree.
    pub fn consistent(&self) -> bool {
        self.monoids_equal == self.coproduct_spatial
    }
}

struct Rectangles {
    prod: RelationalProduct,
    lambda: RelationalMonoid,
    space: crate::frames::ProductSpace,
    pts: Vec<PointSet>,
}

fn rectangles(spaces: &[SpaceDescription]) -> Result<Rectangles, ProductError> {
    if spaces.is_empty() {
        return Err(ProductError::NoFactors);
    }
    if let Some(i) = spaces.iter().position(|s| !s.is_t0()) {
        return Err(ProductError::NotT0(i));
    }
    let fines: Vec<FineCovering> = spaces.iter().map(fine_covering_monoid).collect::<Result<_, _>>()?;
    let ms: Vec<RelationalMonoid> = fines.iter().map(|f| f.monoid.clone()).collect();
    let prod = product_relation(&ms)?;
    let (lambda, _) = prod.monoid.lambda_close(Derivative::Slowed)?;
    let space = product_space(spaces)?;
    let pts = prod
        .coords
        .iter()
        .map(|c| {
            let sets: Vec<PointSet> = c
                .iter()
                .zip(&fines)
                .map(|(x, f)| f.opens[x.index()])
                .collect();
            space.rectangle(&sets)
        })
        .collect();
    Ok(Rectangles {
        prod,
        lambda,
        space,
        pts,
    })
}

fn coproduct_of_spaces(spaces: &[SpaceDescription]) -> Result<(Frame, Frame), ProductError> {
    let frames: Vec<Frame> = spaces
        .iter()
        .map(|s| frame_from_space(s).map(|t| t.frame))
        .collect::<Result<_, _>>()?;
    let cp = coproduct_frames(&frames)?;
    let lf = cp.locale.to_frame()?;
    let prod_top = frame_from_space(&product_space(spaces)?.space)?.frame;
    Ok((lf.frame, prod_top))
}

/// Compares `λΠ O(X_i)` with `O(ΠX_i)` on the product of the opens posets,
/// where `(a, U)` is in `O(ΠX_i)` when the rectangle `a` is covered by the
/// rectangles of `U`; reports spatiality of the coproduct alongside.
pub fn spatial_product_eq(spaces: &[SpaceDescription]) -> Result<SpatialProductReport, ProductError> {
    let r = rectangles(spaces)?;
    let b = r.prod.monoid.carrier();
    let ants = b.antichains(ANTICHAIN_LIMIT)?;
    let mut mismatches = Vec::new();
    let mut pairs_checked = 0;
    for a in b.elements() {
        for u in &ants {
            pairs_checked += 1;
            let left = r.lambda.holds(a, u)?;
            let union = u
                .members()
                .iter()
                .fold(PointSet::EMPTY, |acc, m| acc.union(r.pts[m.index()]));
            let right = r.pts[a.index()].is_subset(union);
            if left != right {
                mismatches.push((a, u.clone()));
            }
        }
    }
    let (cop, prod_top) = coproduct_of_spaces(spaces)?;
    Ok(SpatialProductReport {
        monoids_equal: mismatches.is_empty(),
        mismatches,
        pairs_checked,
        coproduct_spatial: is_spatial(&cop).spatial,
        coproduct_is_product_topology: frame_iso(&cop, &prod_top).is_some(),
    })
}

/// Both sides of the fine-monoid variant of the product characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarVariantReport {
    /// `(1, U) ∈ λΠ O(X_i) ⇔ U ∈ λΠ O(X_i)*` for every cover `U` of the product.
    pub equivalence_holds: bool,
    pub mismatches: Vec<Cover<ElemId>>,
    pub covers_checked: usize,
    /// Every factor is flagged regular and the flag was verified.
    pub regular_asserted: bool,
    /// `λ(Π O(X_i)*) = O(ΠX_i)*`.
    pub fine_equal: bool,
    pub coproduct_spatial: bool,
}

pub fn star_variant_eq(spaces: &[SpaceDescription]) -> Result<StarVariantReport, ProductError> {
    let mut regular_asserted = true;
    for (i, s) in spaces.iter().enumerate() {
        match s.regular_flag() {
            None => return Err(ProductError::RegularityFlagMissing(i)),
            Some(flag) => regular_asserted &= flag && s.is_regular(),
        }
    }
    let r = rectangles(spaces)?;
    let fines: Vec<UniformMonoid> = spaces.iter().map(fine_monoid).collect();
    let pm = product_monoid(&fines)?;
    if pm.monoid.carrier().names() != r.space.space.carrier().names() {
        return Err(ProductError::CarrierMismatch);
    }
    let (star_lambda, _) = pm.monoid.lambda_close(Derivative::Slowed)?;
    let b = r.prod.monoid.carrier();
    let full = pm.monoid.carrier().full();
    let mut mismatches = Vec::new();
    let mut covers_checked = 0;
    for u in b.antichains(ANTICHAIN_LIMIT)? {
        let sets: Cover<PointSet> = Cover::raw(u.members().iter().map(|m| r.pts[m.index()]));
        if sets.union() != full {
            continue;
        }
        covers_checked += 1;
        let left = r.lambda.member(&u)?;
        let right = star_lambda.member_base(&sets)?;
        if left != right {
            mismatches.push(u);
        }
    }
    let fine_product = fine_monoid(&r.space.space);
    let c = pm.monoid.carrier();
    let (x, y) = (star_lambda.finest(), fine_product.finest());
    let fine_equal = refines_unchecked(&x, &y, c) && refines_unchecked(&y, &x, c);
    let (cop, _) = coproduct_of_spaces(spaces)?;
    Ok(StarVariantReport {
        equivalence_holds: mismatches.is_empty(),
        mismatches,
        covers_checked,
        regular_asserted,
        fine_equal,
        coproduct_spatial: is_spatial(&cop).spatial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::validate_frame;
    use alloc::vec;

    fn chain(names: &[&str]) -> Frame {
        let pairs: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Frame::from_relation(names, &pairs).unwrap()
    }

    fn sierpinski() -> SpaceDescription {
        SpaceDescription::from_names(&["a", "b"], &[&[], &["b"], &["a", "b"]]).unwrap()
    }

    fn point() -> SpaceDescription {
        SpaceDescription::from_names(&["p"], &[&[], &["p"]]).unwrap()
    }

    #[test]
    fn canonical_cov_examples() {
        let f = chain(&["0", "m", "1"]);
        let r = canonical_cov(&f).unwrap();
        assert!(r.is_closed());
        let id = |n: &str| f.index_of(n).unwrap();
        let c = |ns: &[&str]| f.order().cover_of_names(ns).unwrap();
        assert!(r.holds(id("0"), &Cover::empty()));
        assert!(r.holds(id("1"), &c(&["1"])));
        assert!(r.holds(id("m"), &c(&["1"])));
        assert!(!r.holds(id("1"), &c(&["m"])));
    }

    #[test]
    fn canonical_locale_is_the_frame() {
        let f = chain(&["0", "m", "1"]);
        let l = locale_from_cov(&canonical_cov(&f).unwrap()).unwrap();
        let lf = l.to_frame().unwrap();
        assert!(frame_iso(&lf.frame, &f).is_some());
    }

    #[test]
    fn locale_of_one_element_carrier() {
        let p = Preorder::from_relation(&["t"], &[]).unwrap();
        let l = locale_from_cov(&CoveringRelation::new(p, vec![]).unwrap()).unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn sierpinski_square() {
        let s = chain(&["0", "m", "1"]);
        let cp = coproduct_frames(&[s.clone(), s.clone()]).unwrap();
        let lf = cp.locale.to_frame().unwrap();
        assert!(validate_frame(&lf.frame).is_empty());
        let sq = frame_from_space(&product_space(&[sierpinski(), sierpinski()]).unwrap().space)
            .unwrap();
        assert!(frame_iso(&lf.frame, &sq.frame).is_some());
        let ms = vec![canonical_monoid(&s).unwrap(), canonical_monoid(&s).unwrap()];
        let report = embed_phi_check(&ms, &cp).unwrap();
        assert!(report.is_empty(), "{report:?}");
        assert!(point_correspondence(&[s.clone(), s.clone()], &cp).unwrap().bijective);
        let bad = coproduct_frames_truncated(&[s.clone(), s], 1).unwrap();
        assert!(!embed_phi_check(&ms, &bad).unwrap().is_empty());
    }

    #[test]
    fn four_rectangle_cover() {
        let c = SubsetCarrier::new(["0", "1"]).unwrap();
        let split = Cover::raw([PointSet::singleton(0), PointSet::singleton(1)]);
        let m = UniformMonoid::new(c, [split]).unwrap();
        let pm = product_monoid(&[m.clone(), m]).unwrap();
        let four = Cover::raw((0..4).map(PointSet::singleton));
        assert!(pm.monoid.basis().contains(&four));
    }

    #[test]
    fn spatial_and_star_examples() {
        let r = spatial_product_eq(&[sierpinski(), sierpinski()]).unwrap();
        assert!(r.monoids_equal && r.coproduct_spatial && r.coproduct_is_product_topology);
        let d = SpaceDescription::from_names(&["x", "y"], &[&[], &["x"], &["y"], &["x", "y"]])
            .unwrap()
            .with_regular_flag(true);
        let s = star_variant_eq(&[d.clone(), d]).unwrap();
        assert!(s.equivalence_holds && s.regular_asserted && s.fine_equal && s.coproduct_spatial);
        let forced = sierpinski().with_regular_flag(true);
        let s = star_variant_eq(&[forced, point().with_regular_flag(true)]).unwrap();
        assert!(!s.regular_asserted);
        assert_eq!(
            star_variant_eq(&[sierpinski()]).unwrap_err(),
            ProductError::RegularityFlagMissing(0)
        );
    }

    #[test]
    fn rectangles_negative_control() {
        let c = SubsetCarrier::new(["0", "1"]).unwrap();
        let t = UniformMonoid::new(c, []).unwrap();
        let pm = product_monoid(&[t.clone(), t]).unwrap();
        let diag = Cover::raw([
            pm.rectangle(&[PointSet::singleton(0), PointSet::singleton(0)])
                .union(pm.rectangle(&[PointSet::singleton(1), PointSet::singleton(1)])),
            pm.rectangle(&[PointSet::singleton(0), PointSet::singleton(1)])
                .union(pm.rectangle(&[PointSet::singleton(1), PointSet::singleton(0)])),
        ]);
        let m = UniformMonoid::new(pm.monoid.carrier().clone(), [diag]).unwrap();
        let rects = vec![PointSet::EMPTY, m.carrier().full()];
        assert!(!rect_basis_report(&m, &rects).unwrap().is_empty());
    }
}
