//! Finite frames, finite topological spaces and their points.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::order::{Carrier, ElemId, OrderError, PointSet, Preorder, SubsetCarrier};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameError {
    Order(OrderError),
    NotAntisymmetric(String, String),
    NoBottom,
    MissingJoin(String, String),
    MissingMeet(String, String),
    InvalidTopology(String),
    NotT0,
    NotRegular,
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::Order(e) => e.fmt(f),
            FrameError::NotAntisymmetric(a, b) => write!(f, "{a} and {b} are distinct but equivalent"),
            FrameError::NoBottom => write!(f, "order has no bottom element"),
            FrameError::MissingJoin(a, b) => write!(f, "{a} and {b} have no least upper bound"),
            FrameError::MissingMeet(a, b) => write!(f, "{a} and {b} have no greatest lower bound"),
            FrameError::InvalidTopology(why) => write!(f, "invalid topology: {why}"),
            FrameError::NotT0 => write!(f, "space is not T0"),
            FrameError::NotRegular => write!(f, "space is not flagged regular"),
        }
    }
}

impl core::error::Error for FrameError {}

impl From<OrderError> for FrameError {
    fn from(e: OrderError) -> Self {
        FrameError::Order(e)
    }
}

/// A finite lattice with its join and meet tables. Distributivity is not
/// enforced at construction; [`validate_frame`] audits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    order: Preorder,
    join: Vec<ElemId>,
    meet: Vec<ElemId>,
    bottom: ElemId,
}

impl Frame {
    pub fn from_relation<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<Self, FrameError> {
        Self::from_order(Preorder::from_relation(names, pairs)?)
    }

    pub fn from_order(order: Preorder) -> Result<Self, FrameError> {
        let n = order.len();
        for a in order.elements() {
            if order.canon(a) != a {
                let r = order.canon(a);
                return Err(FrameError::NotAntisymmetric(
                    order.name(r).into(),
                    order.name(a).into(),
                ));
            }
        }
        let bottom = order
            .elements()
            .find(|&b| order.elements().all(|e| order.le(b, e)))
            .ok_or(FrameError::NoBottom)?;
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for a in order.elements() {
            for b in order.elements() {
                let ub: Vec<ElemId> = order
                    .elements()
                    .filter(|&u| order.le(a, u) && order.le(b, u))
                    .collect();
                let j = ub
                    .iter()
                    .copied()
                    .find(|&u| ub.iter().all(|&v| order.le(u, v)))
                    .ok_or_else(|| {
                        FrameError::MissingJoin(order.name(a).into(), order.name(b).into())
                    })?;
                let lb: Vec<ElemId> = order
                    .elements()
                    .filter(|&l| order.le(l, a) && order.le(l, b))
                    .collect();
                let m = lb
                    .iter()
                    .copied()
                    .find(|&l| lb.iter().all(|&v| order.le(v, l)))
                    .ok_or_else(|| {
                        FrameError::MissingMeet(order.name(a).into(), order.name(b).into())
                    })?;
                join.push(j);
                meet.push(m);
            }
        }
        Ok(Frame {
            order,
            join,
            meet,
            bottom,
        })
    }

    pub fn order(&self) -> &Preorder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        self.order.elements()
    }

    pub fn name(&self, e: ElemId) -> &str {
        self.order.name(e)
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.order.index_of(name)
    }

    pub fn top(&self) -> ElemId {
        self.order.top()
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn le(&self, a: ElemId, b: ElemId) -> bool {
        self.order.le(a, b)
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a.index() * self.len() + b.index()]
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a.index() * self.len() + b.index()]
    }

    /// Join of a finite family, folding the binary table.
    pub fn join_all<I: IntoIterator<Item = ElemId>>(&self, it: I) -> ElemId {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = ElemId>>(&self, it: I) -> ElemId {
        it.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }
}

/// A violated lattice law or distributivity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameViolation {
    BottomNotLeast(String),
    TopNotGreatest(String),
    JoinNotLeastUpperBound(String, String),
    MeetNotGreatestLowerBound(String, String),
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`
    Heyting { x: String, y: String, z: String },
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameViolation::BottomNotLeast(e) => write!(f, "bottom is not below {e}"),
            FrameViolation::TopNotGreatest(e) => write!(f, "top is not above {e}"),
            FrameViolation::JoinNotLeastUpperBound(a, b) => write!(f, "join table wrong at {a}, {b}"),
            FrameViolation::MeetNotGreatestLowerBound(a, b) => write!(f, "meet table wrong at {a}, {b}"),
            FrameViolation::Heyting { x, y, z } => {
                write!(f, "heyting: {x} ∧ ({y} ∨ {z}) ≠ ({x} ∧ {y}) ∨ ({x} ∧ {z})")
            }
        }
    }
}

/// Lists every violated lattice law and distributivity instance. Binary
/// instances suffice: finite joins fold the binary table.
pub fn validate_frame(f: &Frame) -> Vec<FrameViolation> {
    let mut out = Vec::new();
    let name = |e: ElemId| String::from(f.name(e));
    for e in f.elements() {
        if !f.le(f.bottom(), e) {
            out.push(FrameViolation::BottomNotLeast(name(e)));
        }
        if !f.le(e, f.top()) {
            out.push(FrameViolation::TopNotGreatest(name(e)));
        }
    }
    for a in f.elements() {
        for b in f.elements() {
            let j = f.join(a, b);
            let lub = f.le(a, j)
                && f.le(b, j)
                && f.elements().all(|u| !(f.le(a, u) && f.le(b, u)) || f.le(j, u));
            if !lub {
                out.push(FrameViolation::JoinNotLeastUpperBound(name(a), name(b)));
            }
            let m = f.meet(a, b);
            let glb = f.le(m, a)
                && f.le(m, b)
                && f.elements().all(|l| !(f.le(l, a) && f.le(l, b)) || f.le(l, m));
            if !glb {
                out.push(FrameViolation::MeetNotGreatestLowerBound(name(a), name(b)));
            }
        }
    }
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                if y > z {
                    continue;
                }
                let lhs = f.meet(x, f.join(y, z));
                let rhs = f.join(f.meet(x, y), f.meet(x, z));
                if lhs != rhs {
                    out.push(FrameViolation::Heyting {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
            }
        }
    }
    out
}

/// A completely prime filter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    filter: Vec<ElemId>,
}

impl Point {
    pub fn filter(&self) -> &[ElemId] {
        &self.filter
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.filter.binary_search(&x).is_ok()
    }
}

/// All completely prime filters, ordered by their least element. In a finite
/// lattice every filter is principal, so only principal filters are tried.
pub fn points_of(f: &Frame) -> Vec<Point> {
    let mut out = Vec::new();
    for p in f.elements() {
        if p == f.bottom() {
            continue;
        }
        let up: Vec<ElemId> = f.elements().filter(|&e| f.le(p, e)).collect();
        let inside = |e: ElemId| f.le(p, e);
        let prime = f
            .elements()
            .all(|x| f.elements().all(|y| !inside(f.join(x, y)) || inside(x) || inside(y)));
        if prime {
            out.push(Point { filter: up });
        }
    }
    out
}

/// `x*`: the points whose filter contains `x`.
pub fn point_extent(f: &Frame, x: ElemId) -> Result<Vec<Point>, FrameError> {
    f.order().check(x)?;
    Ok(points_of(f).into_iter().filter(|p| p.contains(x)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spatiality {
    pub spatial: bool,
    pub points: usize,
    /// Two distinct elements no point separates.
    pub witness: Option<(ElemId, ElemId)>,
}

pub fn is_spatial(f: &Frame) -> Spatiality {
    let pts = points_of(f);
    let extents: Vec<Vec<bool>> = f
        .elements()
        .map(|x| pts.iter().map(|p| p.contains(x)).collect())
        .collect();
    let mut seen: BTreeMap<&Vec<bool>, ElemId> = BTreeMap::new();
    let mut witness = None;
    for x in f.elements() {
        if let Some(&y) = seen.get(&extents[x.index()]) {
            witness = Some((y, x));
            break;
        }
        seen.insert(&extents[x.index()], x);
    }
    Spatiality {
        spatial: witness.is_none(),
        points: pts.len(),
        witness,
    }
}

/// Searches for an order isomorphism from `f` to `g`; `map[i]` is the image
/// of element `i` of `f`.
pub fn frame_iso(f: &Frame, g: &Frame) -> Option<Vec<ElemId>> {
    if f.len() != g.len() {
        return None;
    }
    let sig = |fr: &Frame, e: ElemId| {
        let below = fr.elements().filter(|&o| fr.le(o, e)).count();
        let above = fr.elements().filter(|&o| fr.le(e, o)).count();
        (below, above)
    };
    let fs: Vec<_> = f.elements().map(|e| sig(f, e)).collect();
    let gs: Vec<_> = g.elements().map(|e| sig(g, e)).collect();
    let mut a = fs.clone();
    let mut b = gs.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let mut order: Vec<ElemId> = f.elements().collect();
    order.sort_by_key(|&e| (fs[e.index()], e));
    let mut map: Vec<Option<ElemId>> = alloc::vec![None; f.len()];
    let mut used = alloc::vec![false; g.len()];
    if iso_rec(f, g, &order, 0, &fs, &gs, &mut map, &mut used) {
        Some(map.into_iter().map(|m| m.expect("complete map")).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_rec(
    f: &Frame,
    g: &Frame,
    order: &[ElemId],
    k: usize,
    fs: &[(usize, usize)],
    gs: &[(usize, usize)],
    map: &mut [Option<ElemId>],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(k) else {
        return true;
    };
    let same = ElemId(x.0);
    let candidates = core::iter::once(same)
        .filter(|c| c.index() < g.len())
        .chain(g.elements().filter(|&c| c != same));
    for y in candidates {
        if used[y.index()] || gs[y.index()] != fs[x.index()] {
            continue;
        }
        let consistent = order[..k].iter().all(|&x2| {
            let y2 = map[x2.index()].expect("assigned");
            f.le(x, x2) == g.le(y, y2) && f.le(x2, x) == g.le(y2, y)
        });
        if !consistent {
            continue;
        }
        map[x.index()] = Some(y);
        used[y.index()] = true;
        if iso_rec(f, g, order, k + 1, fs, gs, map, used) {
            return true;
        }
        map[x.index()] = None;
        used[y.index()] = false;
    }
    false
}

/// A finite topological space given by its open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDescription {
    carrier: SubsetCarrier,
    opens: Vec<PointSet>,
    regular: Option<bool>,
}

impl SpaceDescription {
    pub fn new(carrier: SubsetCarrier, opens: Vec<PointSet>) -> Result<Self, FrameError> {
        let full = carrier.full();
        let set: BTreeSet<PointSet> = opens.into_iter().collect();
        for o in &set {
            carrier.check(*o)?;
        }
        if !set.contains(&PointSet::EMPTY) {
            return Err(FrameError::InvalidTopology("missing the empty set".into()));
        }
        if !set.contains(&full) {
            return Err(FrameError::InvalidTopology("missing the full point set".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&a.union(b)) {
                    return Err(FrameError::InvalidTopology(format!(
                        "not closed under union: {} ∪ {}",
                        carrier.set_name(a),
                        carrier.set_name(b)
                    )));
                }
                if !set.contains(&a.intersection(b)) {
                    return Err(FrameError::InvalidTopology(format!(
                        "not closed under intersection: {} ∩ {}",
                        carrier.set_name(a),
                        carrier.set_name(b)
                    )));
                }
            }
        }
        Ok(SpaceDescription {
            carrier,
            opens: set.into_iter().collect(),
            regular: None,
        })
    }

    /// Points and opens by name.
    pub fn from_names<S: AsRef<str>>(points: &[S], opens: &[&[S]]) -> Result<Self, FrameError> {
        let carrier = SubsetCarrier::new(points.iter().map(|s| String::from(s.as_ref())))?;
        let opens = opens
            .iter()
            .map(|o| {
                o.iter()
                    .map(|n| {
                        carrier
                            .index_of(n.as_ref())
                            .ok_or_else(|| OrderError::UnknownElement(n.as_ref().into()))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(PointSet::from_indices)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(carrier, opens)
    }

    /// Records a caller assertion of regularity.
    pub fn with_regular_flag(mut self, flag: bool) -> Self {
        self.regular = Some(flag);
        self
    }

    pub fn regular_flag(&self) -> Option<bool> {
        self.regular
    }

    pub fn carrier(&self) -> &SubsetCarrier {
        &self.carrier
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn full(&self) -> PointSet {
        self.carrier.full()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    /// Smallest open set containing point `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(self.full(), |a, &o| a.intersection(o))
    }

    pub fn is_t0(&self) -> bool {
        let n = self.carrier.len();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                self.opens
                    .iter()
                    .any(|o| o.contains(x) != o.contains(y))
            })
        })
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        let outside = self
            .opens
            .iter()
            .filter(|o| !o.intersects(s))
            .fold(PointSet::EMPTY, |a, &o| a.union(o));
        self.full().difference(outside)
    }

    /// Each point of an open set has an open neighbourhood whose closure
    /// stays inside it.
    pub fn is_regular(&self) -> bool {
        self.opens.iter().all(|&u| {
            u.iter().all(|x| {
                self.opens
                    .iter()
                    .any(|&v| v.contains(x) && self.closure(v).is_subset(u))
            })
        })
    }
}

/// The frame of opens together with the open set behind each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyFrame {
    pub frame: Frame,
    pub opens: Vec<PointSet>,
}

impl TopologyFrame {
    pub fn element_of(&self, open: PointSet) -> Option<ElemId> {
        self.opens.iter().position(|&o| o == open).map(|i| ElemId(i as u32))
    }
}

/// `T(X)`: opens ordered by inclusion.
pub fn frame_from_space(s: &SpaceDescription) -> Result<TopologyFrame, FrameError> {
    let names: Vec<String> = s.opens.iter().map(|&o| s.carrier.set_name(o)).collect();
    let le: Vec<Vec<bool>> = s
        .opens
        .iter()
        .map(|&a| s.opens.iter().map(|&b| a.is_subset(b)).collect())
        .collect();
    let order = Preorder::from_matrix(&names, &le)?;
    let by_name: BTreeMap<&str, PointSet> =
        names.iter().map(String::as_str).zip(s.opens.iter().copied()).collect();
    let opens = order.elements().map(|e| by_name[order.name(e)]).collect();
    let frame = Frame::from_order(order)?;
    Ok(TopologyFrame { frame, opens })
}

/// Product of finite spaces with its coordinate bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    pub space: SpaceDescription,
    /// `coords[p][i]`: index in factor `i` of product point `p`.
    pub coords: Vec<Vec<usize>>,
}

impl ProductSpace {
    /// `Π sets[i]` as a subset of the product points.
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

/// Tuples `(x,y,..)` named after factor points; the topology is generated by
/// open rectangles.
pub fn product_space(spaces: &[SpaceDescription]) -> Result<ProductSpace, FrameError> {
    let mut tuples: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for s in spaces {
        let mut next = Vec::new();
        for t in &tuples {
            for x in 0..s.carrier.len() {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let tuple_name = |t: &[usize]| {
        let mut out = String::from("(");
        for (i, &x) in t.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(spaces[i].carrier.name(x));
        }
        out.push(')');
        out
    };
    let carrier = SubsetCarrier::new(tuples.iter().map(|t| tuple_name(t)))?;
    let mut coords = alloc::vec![Vec::new(); tuples.len()];
    for t in &tuples {
        let p = carrier.index_of(&tuple_name(t)).expect("named point");
        coords[p] = t.clone();
    }
    let partial = ProductSpace {
        space: SpaceDescription {
            carrier: carrier.clone(),
            opens: Vec::new(),
            regular: None,
        },
        coords,
    };
    let mut rects: Vec<Vec<PointSet>> = alloc::vec![Vec::new()];
    for s in spaces {
        let mut next = Vec::new();
        for r in &rects {
            for &o in &s.opens {
                let mut r2 = r.clone();
                r2.push(o);
                next.push(r2);
            }
        }
        rects = next;
    }
    let mut opens: BTreeSet<PointSet> = rects.iter().map(|r| partial.rectangle(r)).collect();
    opens.insert(PointSet::EMPTY);
    loop {
        let current: Vec<PointSet> = opens.iter().copied().collect();
        let before = opens.len();
        for &a in &current {
            for &b in &current {
                opens.insert(a.union(b));
            }
        }
        if opens.len() == before {
            break;
        }
    }
    let space = SpaceDescription::new(carrier, opens.into_iter().collect())?;
    Ok(ProductSpace {
        space,
        coords: partial.coords,
    })
}
