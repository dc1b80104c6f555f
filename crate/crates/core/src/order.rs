//! Finite carriers, covers and refinement.
//!
//! Two kinds of carrier are supported: [`Preorder`], an abstract finite
//! preordered set with a top element, and [`SubsetCarrier`], the lattice of
//! all subsets of a finite point set. Both implement [`Carrier`], and the
//! cover operations ([`normalize`], [`refines`], [`meet_cover`]) are generic
//! over it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised when a value does not belong to the carrier it is used with,
/// or when a carrier cannot be built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    UnknownElement(String),
    DuplicateName(String),
    NotReflexive(String),
    NotTransitive(String, String, String),
    NoTop,
    TooManyPoints(usize),
    LimitExceeded { what: &'static str, limit: usize },
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::UnknownElement(e) => write!(f, "carrier mismatch: unknown element {e}"),
            OrderError::DuplicateName(n) => write!(f, "duplicate element name {n}"),
            OrderError::NotReflexive(n) => write!(f, "order is not reflexive at {n}"),
            OrderError::NotTransitive(a, b, c) => {
                write!(f, "order is not transitive: {a} <= {b} <= {c}")
            }
            OrderError::NoTop => write!(f, "preorder has no top element"),
            OrderError::TooManyPoints(n) => write!(f, "{n} points exceed the 64-point limit"),
            OrderError::LimitExceeded { what, limit } => {
                write!(f, "internal limit exceeded: more than {limit} {what}")
            }
        }
    }
}

impl core::error::Error for OrderError {}

/// A finite set of points, stored as a bit mask (at most 64 points).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> PointSet {
        PointSet(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Interned element of a [`Preorder`]. Ids follow the lexicographic order of
/// the element names.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElemId(pub u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The structure shared by both carrier kinds.
pub trait Carrier {
    type Elem: Copy + Ord + fmt::Debug;

    fn top(&self) -> Self::Elem;
    fn le(&self, a: Self::Elem, b: Self::Elem) -> bool;
    fn check(&self, a: Self::Elem) -> Result<(), OrderError>;

    /// Representative of the equivalence class of `a` (`a <= b <= a`).
    fn canon(&self, a: Self::Elem) -> Self::Elem {
        a
    }

    /// Elements dropped by normalization (the empty subset).
    fn is_void(&self, _a: Self::Elem) -> bool {
        false
    }

    /// Pushes a set of common lower bounds of `a` and `b` whose maximal
    /// elements are exactly the maximal common lower bounds.
    fn lower_bounds(&self, a: Self::Elem, b: Self::Elem, out: &mut Vec<Self::Elem>);
}

/// A finite family of carrier elements. Values built through [`normalize`]
/// hold only maximal members, sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Cover<E> {
    members: Vec<E>,
}

impl<E: Copy + Ord> Cover<E> {
    /// Wraps members without normalizing (sorted and deduplicated only).
    pub fn raw<I: IntoIterator<Item = E>>(members: I) -> Self {
        let mut members: Vec<E> = members.into_iter().collect();
        members.sort();
        members.dedup();
        Cover { members }
    }

    pub fn empty() -> Self {
        Cover { members: Vec::new() }
    }

    pub fn singleton(e: E) -> Self {
        Cover { members: alloc::vec![e] }
    }

    pub fn members(&self) -> &[E] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.members.binary_search(e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.members.iter()
    }
}

impl Cover<PointSet> {
    /// Union of all members.
    pub fn union(&self) -> PointSet {
        self.members.iter().fold(PointSet::EMPTY, |a, &b| a.union(b))
    }
}

fn check_all<C: Carrier>(carrier: &C, u: &Cover<C::Elem>) -> Result<(), OrderError> {
    u.members.iter().try_for_each(|&m| carrier.check(m))
}

/// Canonical representative: members mapped to class representatives, void
/// members dropped, only maximal members kept.
pub fn normalize<C: Carrier>(u: &Cover<C::Elem>, carrier: &C) -> Cover<C::Elem> {
    normalize_members(u.members.iter().copied(), carrier)
}

pub(crate) fn normalize_members<C: Carrier, I: IntoIterator<Item = C::Elem>>(
    members: I,
    carrier: &C,
) -> Cover<C::Elem> {
    let mut ms: Vec<C::Elem> = members
        .into_iter()
        .filter(|&m| !carrier.is_void(m))
        .map(|m| carrier.canon(m))
        .collect();
    ms.sort();
    ms.dedup();
    let keep: Vec<C::Elem> = ms
        .iter()
        .copied()
        .filter(|&m| !ms.iter().any(|&o| o != m && carrier.le(m, o)))
        .collect();
    Cover { members: keep }
}

pub(crate) fn refines_unchecked<C: Carrier>(
    u: &Cover<C::Elem>,
    v: &Cover<C::Elem>,
    carrier: &C,
) -> bool {
    u.members
        .iter()
        .all(|&a| carrier.is_void(a) || v.members.iter().any(|&b| carrier.le(a, b)))
}

/// `u` refines `v`: every member of `u` lies below some member of `v`.
pub fn refines<C: Carrier>(
    u: &Cover<C::Elem>,
    v: &Cover<C::Elem>,
    carrier: &C,
) -> Result<bool, OrderError> {
    check_all(carrier, u)?;
    check_all(carrier, v)?;
    Ok(refines_unchecked(u, v, carrier))
}

pub(crate) fn meet_unchecked<C: Carrier>(
    u: &Cover<C::Elem>,
    v: &Cover<C::Elem>,
    carrier: &C,
) -> Cover<C::Elem> {
    let mut out = Vec::new();
    for &a in &u.members {
        for &b in &v.members {
            carrier.lower_bounds(a, b, &mut out);
        }
    }
    normalize_members(out, carrier)
}

/// Greatest lower bound of two covers in the refinement preorder.
pub fn meet_cover<C: Carrier>(
    u: &Cover<C::Elem>,
    v: &Cover<C::Elem>,
    carrier: &C,
) -> Result<Cover<C::Elem>, OrderError> {
    check_all(carrier, u)?;
    check_all(carrier, v)?;
    Ok(meet_unchecked(u, v, carrier))
}

/// Mutual refinement, the identity of covers.
pub fn equivalent<C: Carrier>(u: &Cover<C::Elem>, v: &Cover<C::Elem>, carrier: &C) -> bool {
    refines_unchecked(u, v, carrier) && refines_unchecked(v, u, carrier)
}

/// The lattice of subsets of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCarrier {
    names: Vec<String>,
}

impl SubsetCarrier {
    /// Points are re-indexed in lexicographic order of their names.
    pub fn new<I, S>(names: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateName(w[0].clone()));
        }
        if names.len() > 64 {
            return Err(OrderError::TooManyPoints(names.len()));
        }
        Ok(SubsetCarrier { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.names.len())
    }

    /// `{a,b}` using point names.
    pub fn set_name(&self, s: PointSet) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }

    /// All subsets of the point set in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = PointSet> {
        let n = self.names.len();
        let end: u64 = if n >= 64 { u64::MAX } else { 1u64 << n };
        (0..end).map(PointSet)
    }
}

impl Carrier for SubsetCarrier {
    type Elem = PointSet;

    fn top(&self) -> PointSet {
        self.full()
    }

    fn le(&self, a: PointSet, b: PointSet) -> bool {
        a.is_subset(b)
    }

    fn check(&self, a: PointSet) -> Result<(), OrderError> {
        if a.is_subset(self.full()) {
            Ok(())
        } else {
            Err(OrderError::UnknownElement(alloc::format!("{a:?}")))
        }
    }

    fn is_void(&self, a: PointSet) -> bool {
        a.is_empty()
    }

    fn lower_bounds(&self, a: PointSet, b: PointSet, out: &mut Vec<PointSet>) {
        out.push(a.intersection(b));
    }
}

/// `{m ∩ a : m ∈ u}`, normalized.
pub fn restrict(u: &Cover<PointSet>, a: PointSet, carrier: &SubsetCarrier) -> Cover<PointSet> {
    normalize_members(u.members.iter().map(|m| m.intersection(a)), carrier)
}

/// `St(m, v)`: union of the members of `v` meeting `m`.
pub fn star(m: PointSet, v: &Cover<PointSet>) -> PointSet {
    v.members
        .iter()
        .filter(|o| o.intersects(m))
        .fold(PointSet::EMPTY, |acc, &o| acc.union(o))
}

/// `v` star-refines `u`: every star `St(m, v)` lies inside a member of `u`.
pub fn star_refines(
    v: &Cover<PointSet>,
    u: &Cover<PointSet>,
    carrier: &SubsetCarrier,
) -> Result<bool, OrderError> {
    check_all(carrier, u)?;
    check_all(carrier, v)?;
    Ok(v.members
        .iter()
        .filter(|m| !m.is_empty())
        .all(|&m| u.members.iter().any(|&o| star(m, v).is_subset(o))))
}

/// A finite preordered set with a top element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    names: Vec<String>,
    le: Vec<bool>,
    reps: Vec<ElemId>,
    top: ElemId,
}

impl Preorder {
    /// Builds the reflexive-transitive closure of `pairs` (`(a, b)` meaning
    /// `a <= b`, by name).
    pub fn from_relation<S: AsRef<str>>(
        names: &[S],
        pairs: &[(S, S)],
    ) -> Result<Self, OrderError> {
        let mut sorted: Vec<String> = names.iter().map(|s| String::from(s.as_ref())).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateName(w[0].clone()));
        }
        let n = sorted.len();
        let idx = |s: &str| -> Result<usize, OrderError> {
            sorted
                .binary_search_by(|x| x.as_str().cmp(s))
                .map_err(|_| OrderError::UnknownElement(String::from(s)))
        };
        let mut le = alloc::vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in pairs {
            let (i, j) = (idx(a.as_ref())?, idx(b.as_ref())?);
            le[i * n + j] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_parts(sorted, le)
    }

    /// Builds from an explicit matrix (`le[i][j]` iff `names[i] <= names[j]`),
    /// rejecting relations that are not reflexive and transitive.
    pub fn from_matrix<S: AsRef<str>>(names: &[S], le: &[Vec<bool>]) -> Result<Self, OrderError> {
        let n = names.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| names[a].as_ref().cmp(names[b].as_ref()));
        let sorted: Vec<String> = order.iter().map(|&i| String::from(names[i].as_ref())).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateName(w[0].clone()));
        }
        let mut flat = alloc::vec![false; n * n];
        for (i, &oi) in order.iter().enumerate() {
            for (j, &oj) in order.iter().enumerate() {
                flat[i * n + j] = le[oi][oj];
            }
        }
        for i in 0..n {
            if !flat[i * n + i] {
                return Err(OrderError::NotReflexive(sorted[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !flat[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if flat[j * n + k] && !flat[i * n + k] {
                        return Err(OrderError::NotTransitive(
                            sorted[i].clone(),
                            sorted[j].clone(),
                            sorted[k].clone(),
                        ));
                    }
                }
            }
        }
        Self::from_parts(sorted, flat)
    }

    fn from_parts(names: Vec<String>, le: Vec<bool>) -> Result<Self, OrderError> {
        let n = names.len();
        let top = (0..n)
            .find(|&t| (0..n).all(|e| le[e * n + t]))
            .ok_or(OrderError::NoTop)?;
        let reps = (0..n)
            .map(|i| {
                let r = (0..n).find(|&j| le[i * n + j] && le[j * n + i]).unwrap_or(i);
                ElemId(r as u32)
            })
            .collect();
        Ok(Preorder {
            names,
            le,
            reps,
            top: ElemId(top as u32),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.names[e.index()]
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| ElemId(i as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.names.len() as u32).map(ElemId)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.elements().all(|e| self.reps[e.index()] == e)
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between (by class
    /// representative), in canonical order.
    pub fn hasse_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let reps: Vec<ElemId> = self.elements().filter(|&e| self.reps[e.index()] == e).collect();
        let lt = |a: ElemId, b: ElemId| a != b && self.le(a, b);
        let mut out = Vec::new();
        for &a in &reps {
            for &b in &reps {
                if lt(a, b) && !reps.iter().any(|&c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        // equivalent elements are linked to their representative
        for e in self.elements() {
            let r = self.reps[e.index()];
            if r != e {
                out.push((e, r));
                out.push((r, e));
            }
        }
        out.sort();
        out
    }

    /// All antichains of class representatives, in canonical order.
    pub fn antichains(&self, limit: usize) -> Result<Vec<Cover<ElemId>>, OrderError> {
        let reps: Vec<ElemId> = self.elements().filter(|&e| self.reps[e.index()] == e).collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.antichains_rec(&reps, 0, &mut current, &mut out, limit)?;
        out.sort();
        Ok(out)
    }

    fn antichains_rec(
        &self,
        reps: &[ElemId],
        start: usize,
        current: &mut Vec<ElemId>,
        out: &mut Vec<Cover<ElemId>>,
        limit: usize,
    ) -> Result<(), OrderError> {
        if out.len() >= limit {
            return Err(OrderError::LimitExceeded {
                what: "antichains",
                limit,
            });
        }
        out.push(Cover {
            members: current.clone(),
        });
        for k in start..reps.len() {
            let e = reps[k];
            if current.iter().all(|&c| !self.le(c, e) && !self.le(e, c)) {
                current.push(e);
                self.antichains_rec(reps, k + 1, current, out, limit)?;
                current.pop();
            }
        }
        Ok(())
    }

    /// Cover built from element names.
    pub fn cover_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Cover<ElemId>, OrderError> {
        let ids = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| OrderError::UnknownElement(String::from(n.as_ref())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cover::raw(ids))
    }

    /// `{a,b}` using element names.
    pub fn cover_name(&self, u: &Cover<ElemId>) -> String {
        let mut out = String::from("{");
        for (k, &e) in u.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.name(e));
        }
        out.push('}');
        out
    }
}

impl Carrier for Preorder {
    type Elem = ElemId;

    fn top(&self) -> ElemId {
        self.top
    }

    fn le(&self, a: ElemId, b: ElemId) -> bool {
        self.le[a.index() * self.names.len() + b.index()]
    }

    fn check(&self, a: ElemId) -> Result<(), OrderError> {
        if a.index() < self.names.len() {
            Ok(())
        } else {
            Err(OrderError::UnknownElement(alloc::format!("#{}", a.0)))
        }
    }

    fn canon(&self, a: ElemId) -> ElemId {
        self.reps[a.index()]
    }

    fn lower_bounds(&self, a: ElemId, b: ElemId, out: &mut Vec<ElemId>) {
        out.extend(self.elements().filter(|&w| self.le(w, a) && self.le(w, b)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

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
    fn refinement_examples() {
        let c = three();
        let u = cov(&[&[0], &[1, 2]]);
        let v = cov(&[&[0, 1], &[1, 2]]);
        assert!(refines(&u, &v, &c).unwrap());
        assert!(refines(&u, &u, &c).unwrap());
        assert!(!refines(&v, &u, &c).unwrap());
    }

    #[test]
    fn refines_rejects_foreign_points() {
        let c = three();
        let u = cov(&[&[5]]);
        assert!(matches!(
            refines(&u, &u, &c),
            Err(OrderError::UnknownElement(_))
        ));
    }

    #[test]
    fn meet_examples() {
        let c = three();
        let u = cov(&[&[0, 1], &[2]]);
        let v = cov(&[&[0], &[1, 2]]);
        assert_eq!(meet_cover(&u, &v, &c).unwrap(), cov(&[&[0], &[1], &[2]]));
        let top = Cover::singleton(c.full());
        assert_eq!(meet_cover(&u, &top, &c).unwrap(), normalize(&u, &c));
    }

    #[test]
    fn preorder_meet_keeps_maximal_lower_bounds() {
        let p = Preorder::from_relation(
            &["t", "b", "c", "d", "z"],
            &[("b", "t"), ("c", "t"), ("d", "b"), ("d", "c"), ("z", "d")],
        )
        .unwrap();
        let b = p.cover_of_names(&["b"]).unwrap();
        let c = p.cover_of_names(&["c"]).unwrap();
        let d = p.cover_of_names(&["d"]).unwrap();
        assert_eq!(meet_cover(&b, &c, &p).unwrap(), d);
    }

    #[test]
    fn normalize_examples() {
        let c = three();
        assert_eq!(normalize(&cov(&[&[0, 1], &[0], &[1]]), &c), cov(&[&[0, 1]]));
        let n = cov(&[&[0], &[1, 2]]);
        assert_eq!(normalize(&n, &c), n);
        assert_eq!(normalize(&cov(&[&[], &[2]]), &c), cov(&[&[2]]));
    }

    #[test]
    fn restrict_examples() {
        let c = three();
        let u = cov(&[&[0, 1], &[1, 2]]);
        assert_eq!(restrict(&u, ps(&[1, 2]), &c), cov(&[&[1, 2]]));
        assert_eq!(restrict(&u, c.full(), &c), normalize(&u, &c));
        assert_eq!(restrict(&u, PointSet::EMPTY, &c), Cover::empty());
    }

    #[test]
    fn star_refinement_examples() {
        let c = three();
        let singles = cov(&[&[0], &[1], &[2]]);
        let chain = cov(&[&[0, 1], &[1, 2]]);
        assert!(star_refines(&singles, &chain, &c).unwrap());
        let top = Cover::singleton(c.full());
        assert!(star_refines(&top, &top, &c).unwrap());
        assert!(!star_refines(&chain, &chain, &c).unwrap());
    }

    #[test]
    fn equivalent_elements_share_a_representative() {
        let p = Preorder::from_relation(&["a", "b", "t"], &[("a", "b"), ("b", "a"), ("b", "t")])
            .unwrap();
        assert!(!p.is_antisymmetric());
        let a = p.cover_of_names(&["a"]).unwrap();
        let b = p.cover_of_names(&["b"]).unwrap();
        assert_eq!(normalize(&a, &p), normalize(&b, &p));
        assert_eq!(p.antichains(100).unwrap().len(), 3);
    }

    #[test]
    fn matrix_constructor_checks_transitivity() {
        let m = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            Preorder::from_matrix(&["a", "b", "c"], &m),
            Err(OrderError::NotTransitive(..))
        ));
    }

    #[test]
    fn missing_top_is_rejected() {
        assert_eq!(
            Preorder::from_relation::<&str>(&["a", "b"], &[]),
            Err(OrderError::NoTop)
        );
    }
}
