//! Entailment over a commutative monoid presentation.
//!
//! Judgments `a ⊨ U` are closed under four rules:
//!
//! 1. `a ∈ U` gives `a ⊨ U`;
//! 2. `a·b ⊨ {a}`;
//! 3. `a ⊨ U` and `a ⊨ V` give `a ⊨ U·V` with `U·V = {u·v}`;
//! 4. `a ⊨ U` and `u ⊨ V` for every `u ∈ U` give `a ⊨ V`.
//!
//! Covers are arbitrary subsets of the base, so the closure is computed on
//! bitsets indexed by subsets. Derivable sets are upward closed (rules 1 and
//! 4 give weakening), which lets each stage work from minimal covers only.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::Bits;
use crate::covering::{CoveringRelation, DerivationTrace, RelationalMonoid};
use crate::order::{normalize, Cover, ElemId, OrderError, Preorder};

/// Largest base the subset bitsets support.
pub const MAX_BASE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormalError {
    Order(OrderError),
    /// The product table has the wrong shape or entries out of range.
    BadTable,
    NotAssociative(String, String, String),
    NotCommutative(String, String),
    NoUnit,
    UnknownElement(ElemId),
    LimitExceeded { what: &'static str, limit: usize },
}

impl fmt::Display for FormalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalError::Order(e) => e.fmt(f),
            FormalError::BadTable => f.write_str("product table is not n x n over the elements"),
            FormalError::NotAssociative(a, b, c) => {
                write!(f, "product is not associative at ({a},{b},{c})")
            }
            FormalError::NotCommutative(a, b) => write!(f, "product is not commutative at ({a},{b})"),
            FormalError::NoUnit => f.write_str("the named unit is not a unit"),
            FormalError::UnknownElement(e) => write!(f, "unknown element #{}", e.0),
            FormalError::LimitExceeded { what, limit } => {
                write!(f, "internal limit exceeded: more than {limit} {what}")
            }
        }
    }
}

impl core::error::Error for FormalError {}

impl From<OrderError> for FormalError {
    fn from(e: OrderError) -> Self {
        match e {
            OrderError::LimitExceeded { what, limit } => FormalError::LimitExceeded { what, limit },
            other => FormalError::Order(other),
        }
    }
}

/// A finite commutative monoid with named elements, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalBase {
    names: Vec<String>,
    table: Vec<ElemId>,
    unit: ElemId,
}

impl FormalBase {
    /// `table[i][j]` is the index of `names[i]·names[j]`.
    pub fn new<S: AsRef<str>>(names: &[S], table: &[Vec<usize>], unit: &str) -> Result<Self, FormalError> {
        let n = names.len();
        if n > MAX_BASE {
            return Err(FormalError::LimitExceeded {
                what: "monoid elements",
                limit: MAX_BASE,
            });
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(FormalError::BadTable);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| names[a].as_ref().cmp(names[b].as_ref()));
        let sorted: Vec<String> = order.iter().map(|&i| String::from(names[i].as_ref())).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateName(w[0].clone()).into());
        }
        let mut pos = alloc::vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut t = alloc::vec![ElemId(0); n * n];
        for i in 0..n {
            for j in 0..n {
                t[pos[i] * n + pos[j]] = ElemId(pos[table[i][j]] as u32);
            }
        }
        let unit = sorted
            .iter()
            .position(|s| s == unit)
            .map(|i| ElemId(i as u32))
            .ok_or_else(|| OrderError::UnknownElement(unit.into()))?;
        let base = FormalBase {
            names: sorted,
            table: t,
            unit,
        };
        base.validate()?;
        Ok(base)
    }

    fn validate(&self) -> Result<(), FormalError> {
        let els: Vec<ElemId> = self.elements().collect();
        for &a in &els {
            if self.mul(self.unit, a) != a {
                return Err(FormalError::NoUnit);
            }
            for &b in &els {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(FormalError::NotCommutative(self.name(a).into(), self.name(b).into()));
                }
                for &c in &els {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(FormalError::NotAssociative(
                            self.name(a).into(),
                            self.name(b).into(),
                            self.name(c).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
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

    pub fn name(&self, a: ElemId) -> &str {
        &self.names[a.index()]
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|s| s == name).map(|i| ElemId(i as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.names.len() as u32).map(ElemId)
    }

    pub fn unit(&self) -> ElemId {
        self.unit
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a.index() * self.len() + b.index()]
    }

    /// `x ≤ a` iff `x = a·b` for some `b`.
    pub fn divides(&self, x: ElemId, a: ElemId) -> bool {
        self.elements().any(|b| self.mul(a, b) == x)
    }

    /// The divisibility preorder; its ids agree with the base's.
    pub fn preorder(&self) -> Preorder {
        let le: Vec<Vec<bool>> = self
            .elements()
            .map(|x| self.elements().map(|a| self.divides(x, a)).collect())
            .collect();
        Preorder::from_matrix(&self.names, &le).expect("divisibility is a preorder with top 1")
    }

    fn check(&self, a: ElemId) -> Result<(), FormalError> {
        if a.index() < self.len() {
            Ok(())
        } else {
            Err(FormalError::UnknownElement(a))
        }
    }

    /// `U·V`
    pub fn product_set(&self, u: &Cover<ElemId>, v: &Cover<ElemId>) -> Cover<ElemId> {
        Cover::raw(
            u.members()
                .iter()
                .flat_map(|&x| v.members().iter().map(move |&y| (x, y)))
                .map(|(x, y)| self.mul(x, y)),
        )
    }
}

/// `subject ⊨ cover`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Judgment {
    pub subject: ElemId,
    pub cover: Cover<ElemId>,
}

impl Judgment {
    pub fn new<I: IntoIterator<Item = ElemId>>(subject: ElemId, cover: I) -> Self {
        Judgment {
            subject,
            cover: Cover::raw(cover),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPresentation {
    base: FormalBase,
    axioms: Vec<Judgment>,
}

impl FormalPresentation {
    pub fn new<I: IntoIterator<Item = Judgment>>(base: FormalBase, axioms: I) -> Result<Self, FormalError> {
        let mut ax: Vec<Judgment> = axioms.into_iter().collect();
        for j in &ax {
            base.check(j.subject)?;
            for &m in j.cover.members() {
                base.check(m)?;
            }
        }
        ax.sort();
        ax.dedup();
        Ok(FormalPresentation { base, axioms: ax })
    }

    pub fn base(&self) -> &FormalBase {
        &self.base
    }

    pub fn axioms(&self) -> &[Judgment] {
        &self.axioms
    }

    /// Saturates the axioms under the four rules.
    pub fn saturate(&self) -> Entailment {
        Entailment::build(self)
    }
}

/// The rule concluding a derivation node.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom,
    /// Rule 1.
    Member,
    /// Rule 2.
    Product,
    /// Rule 3.
    Meet,
    /// Rule 4.
    Transitive,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Axiom => "axiom",
            Rule::Member => "rule 1",
            Rule::Product => "rule 2",
            Rule::Meet => "rule 3",
            Rule::Transitive => "rule 4",
        })
    }
}

/// A proof tree; leaves are axioms or instances of rules 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Judgment,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Number of levels; a single leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Derivation::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }
}

#[derive(Clone, Debug)]
enum Why {
    Axiom,
    Member,
    Product,
    Meet(usize, usize),
    /// Via the cover `U` (a mask) of the subject.
    Transitive(usize),
}

/// The saturated judgment set with derivation bookkeeping.
#[derive(Clone, Debug)]
pub struct Entailment {
    base: FormalBase,
    /// `derivable[a]`: bitset over cover masks.
    derivable: Vec<Bits>,
    /// First stage at which each `(a, mask)` became derivable.
    stage: Vec<BTreeMap<usize, usize>>,
    why: BTreeMap<(usize, usize), (usize, Why)>,
    trace: DerivationTrace<Judgment>,
}

fn mask_of(u: &Cover<ElemId>) -> usize {
    u.members().iter().fold(0, |m, e| m | (1 << e.index()))
}

fn cover_of(mask: usize) -> Cover<ElemId> {
    Cover::raw((0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| ElemId(i as u32)))
}

fn up_close(b: &mut Bits, n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for m in 0..(1usize << n) {
            if m & bit == 0 && b.contains(m) {
                b.insert(m | bit);
            }
        }
    }
}

/// Minimal members of `set` when `set` is the difference of two up-sets.
fn minimal(set: &Bits, n: usize) -> Vec<usize> {
    set.iter()
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || !set.contains(m & !(1 << i))))
        .collect()
}

impl Entailment {
    fn build(p: &FormalPresentation) -> Self {
        let base = p.base.clone();
        let n = base.len();
        let subsets = 1usize << n;
        let mut derivable: Vec<Bits> = (0..n).map(|_| Bits::new(subsets)).collect();
        let mut stage: Vec<BTreeMap<usize, usize>> = alloc::vec![BTreeMap::new(); n];
        let mut why = BTreeMap::new();
        let mut trace = DerivationTrace::new();

        let mut candidates: Vec<(usize, usize, Why)> = Vec::new();
        for j in &p.axioms {
            candidates.push((j.subject.index(), mask_of(&j.cover), Why::Axiom));
        }
        for a in base.elements() {
            candidates.push((a.index(), 1 << a.index(), Why::Member));
            for b in base.elements() {
                candidates.push((base.mul(a, b).index(), 1 << a.index(), Why::Product));
            }
        }
        let mut round = 0;
        loop {
            let mut next = derivable.clone();
            let mut added = Vec::new();
            for (a, m, w) in candidates.drain(..) {
                if !next[a].contains(m) {
                    next[a].insert(m);
                    why.insert((a, m), (round, w));
                    added.push(Judgment {
                        subject: ElemId(a as u32),
                        cover: cover_of(m),
                    });
                }
            }
            for (a, set) in next.iter_mut().enumerate() {
                up_close(set, n);
                for m in set.iter() {
                    stage[a].entry(m).or_insert(round);
                }
            }
            added.sort();
            if round > 0 {
                trace.push(added.clone());
            }
            let grew = next != derivable;
            derivable = next;
            if !grew && round > 0 {
                break;
            }
            round += 1;
            // rules 3 and 4 on the current stage
            for a in 0..n {
                let mins = minimal(&derivable[a], n);
                for (k, &u) in mins.iter().enumerate() {
                    for &v in &mins[k..] {
                        let prod = mask_of(&base.product_set(&cover_of(u), &cover_of(v)));
                        if !derivable[a].contains(prod) {
                            candidates.push((a, prod, Why::Meet(u, v)));
                        }
                    }
                    let mut inner = Bits::full(subsets);
                    for x in (0..n).filter(|x| u >> x & 1 == 1) {
                        inner.and_with(&derivable[x]);
                    }
                    let mut fresh = Bits::new(subsets);
                    for m in inner.iter() {
                        if !derivable[a].contains(m) {
                            fresh.insert(m);
                        }
                    }
                    for m in minimal(&fresh, n) {
                        candidates.push((a, m, Why::Transitive(u)));
                    }
                }
            }
            if candidates.is_empty() {
                trace.push(Vec::new());
                break;
            }
        }
        Entailment {
            base,
            derivable,
            stage,
            why,
            trace,
        }
    }

    pub fn base(&self) -> &FormalBase {
        &self.base
    }

    pub fn trace(&self) -> &DerivationTrace<Judgment> {
        &self.trace
    }

    pub fn holds(&self, j: &Judgment) -> Result<bool, FormalError> {
        self.base.check(j.subject)?;
        for &m in j.cover.members() {
            self.base.check(m)?;
        }
        Ok(self.derivable[j.subject.index()].contains(mask_of(&j.cover)))
    }

    /// All derivable judgments, in mask order per subject.
    pub fn judgments(&self) -> Vec<Judgment> {
        self.base
            .elements()
            .flat_map(|a| {
                self.derivable[a.index()].iter().map(move |m| Judgment {
                    subject: a,
                    cover: cover_of(m),
                })
            })
            .collect()
    }

    /// Minimal derivable covers of `a`.
    pub fn minimal_covers(&self, a: ElemId) -> Vec<Cover<ElemId>> {
        minimal(&self.derivable[a.index()], self.base.len())
            .into_iter()
            .map(cover_of)
            .collect()
    }

    pub fn derivation(&self, j: &Judgment) -> Result<Option<Derivation>, FormalError> {
        if !self.holds(j)? {
            return Ok(None);
        }
        Ok(Some(self.prove(j.subject.index(), mask_of(&j.cover))))
    }

    fn prove(&self, a: usize, m: usize) -> Derivation {
        let conclusion = Judgment {
            subject: ElemId(a as u32),
            cover: cover_of(m),
        };
        if let Some((_, w)) = self.why.get(&(a, m)) {
            return match *w {
                Why::Axiom => leaf(conclusion, Rule::Axiom),
                Why::Member => leaf(conclusion, Rule::Member),
                Why::Product => leaf(conclusion, Rule::Product),
                Why::Meet(u, v) => Derivation {
                    conclusion,
                    rule: Rule::Meet,
                    premises: alloc::vec![self.prove(a, u), self.prove(a, v)],
                },
                Why::Transitive(u) => {
                    let mut premises = alloc::vec![self.prove(a, u)];
                    for x in (0..self.base.len()).filter(|x| u >> x & 1 == 1) {
                        premises.push(self.prove(x, m));
                    }
                    Derivation {
                        conclusion,
                        rule: Rule::Transitive,
                        premises,
                    }
                }
            };
        }
        // weakening from a justified subset of the same stage
        let s = self.stage[a][&m];
        let (&(_, sub), _) = self
            .why
            .range((a, 0)..(a + 1, 0))
            .find(|(&(_, k), (st, _))| *st == s && k & !m == 0 && k != m)
            .expect("every derivable cover contains a justified one");
        let mut premises = alloc::vec![self.prove(a, sub)];
        for x in (0..self.base.len()).filter(|x| sub >> x & 1 == 1) {
            premises.push(leaf(
                Judgment {
                    subject: ElemId(x as u32),
                    cover: cover_of(m),
                },
                Rule::Member,
            ));
        }
        Derivation {
            conclusion,
            rule: Rule::Transitive,
            premises,
        }
    }

    /// Instances of the four rules whose conclusion is missing, checked over
    /// all subsets.
    pub fn audit(&self) -> Result<Vec<Judgment>, FormalError> {
        let n = self.base.len();
        if n > 8 {
            return Err(FormalError::LimitExceeded {
                what: "elements for the rule audit",
                limit: 8,
            });
        }
        let subsets = 1usize << n;
        let mut missing = Vec::new();
        let mut need = |a: usize, m: usize| {
            if !self.derivable[a].contains(m) {
                missing.push(Judgment {
                    subject: ElemId(a as u32),
                    cover: cover_of(m),
                });
            }
        };
        for a in 0..n {
            for m in 0..subsets {
                if m >> a & 1 == 1 {
                    need(a, m);
                }
            }
            for b in self.base.elements() {
                need(self.base.mul(ElemId(a as u32), b).index(), 1 << a);
            }
            let have: Vec<usize> = self.derivable[a].iter().collect();
            for &u in &have {
                for &v in &have {
                    need(a, mask_of(&self.base.product_set(&cover_of(u), &cover_of(v))));
                }
                for v in 0..subsets {
                    if (0..n).filter(|x| u >> x & 1 == 1).all(|x| self.derivable[x].contains(v)) {
                        need(a, v);
                    }
                }
            }
        }
        missing.sort();
        missing.dedup();
        Ok(missing)
    }
}

fn leaf(conclusion: Judgment, rule: Rule) -> Derivation {
    Derivation {
        conclusion,
        rule,
        premises: Vec::new(),
    }
}

pub fn entails(p: &FormalPresentation, j: &Judgment) -> Result<bool, FormalError> {
    p.saturate().holds(j)
}

pub fn derivation(p: &FormalPresentation, j: &Judgment) -> Result<Option<Derivation>, FormalError> {
    p.saturate().derivation(j)
}

/// The covering monoid over the divisibility preorder whose pairs are the
/// derivable judgments.
pub fn covers_of_unit(p: &FormalPresentation) -> RelationalMonoid {
    let e = p.saturate();
    let order = p.base.preorder();
    let base = p
        .base
        .elements()
        .map(|a| e.minimal_covers(a).iter().map(|c| normalize(c, &order)).collect())
        .collect();
    RelationalMonoid::from_covers(order, base)
}

/// The presentation as generators over the divisibility preorder: the axioms
/// plus `(w, {u·v})` for every common lower bound `w` of `u` and `v`, the
/// covering form of rule 3.
pub fn to_covering_relation(p: &FormalPresentation) -> CoveringRelation {
    let b = &p.base;
    let order = b.preorder();
    let mut pairs: Vec<(ElemId, Cover<ElemId>)> =
        p.axioms.iter().map(|j| (j.subject, j.cover.clone())).collect();
    for u in b.elements() {
        for v in b.elements() {
            for w in b.elements() {
                if b.divides(w, u) && b.divides(w, v) {
                    pairs.push((w, Cover::singleton(b.mul(u, v))));
                }
            }
        }
    }
    CoveringRelation::new(order, pairs).expect("ids come from the base")
}

/// All commutative monoids with `n` elements up to isomorphism, as product
/// tables over `0..n` with unit `0`.
pub fn commutative_monoids(n: usize) -> Result<Vec<Vec<Vec<usize>>>, FormalError> {
    if n > 5 {
        return Err(FormalError::LimitExceeded {
            what: "elements for monoid enumeration",
            limit: 5,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut table = alloc::vec![alloc::vec![0usize; n]; n];
    for x in 0..n {
        table[0][x] = x;
        table[x][0] = x;
    }
    let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    let perms = permutations_fixing_zero(n);
    fill(&cells, 0, &mut table, n, &mut |t| {
        let canon = perms
            .iter()
            .map(|p| relabel(t, p))
            .min()
            .expect("identity permutation");
        if seen.insert(canon.clone()) {
            found.push(canon);
        }
    });
    found.sort();
    Ok(found)
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    table: &mut Vec<Vec<usize>>,
    n: usize,
    out: &mut impl FnMut(&Vec<Vec<usize>>),
) {
    if k == cells.len() {
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
        });
        if assoc {
            out(table);
        }
        return;
    }
    let (a, b) = cells[k];
    for v in 0..n {
        table[a][b] = v;
        table[b][a] = v;
        fill(cells, k + 1, table, n, out);
    }
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut out);
    out.into_iter()
        .map(|r| core::iter::once(0).chain(r).collect())
        .collect()
}

fn permute(xs: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == xs.len() {
        out.push(xs.clone());
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, out);
        xs.swap(k, i);
    }
}

fn relabel(t: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut out = alloc::vec![alloc::vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[p[a]][p[b]] = p[t[a][b]];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{saturate, Derivative};
    use crate::order::Carrier;
    use alloc::vec;

    /// The semilattice `1 > b, c > d`.
    fn diamond() -> FormalBase {
        let names = ["1", "b", "c", "d"];
        let t = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
        FormalBase::new(&names, &t, "1").unwrap()
    }

    fn j(b: &FormalBase, a: &str, u: &[&str]) -> Judgment {
        Judgment::new(b.index_of(a).unwrap(), u.iter().map(|x| b.index_of(x).unwrap()))
    }

    fn fixture() -> FormalPresentation {
        let b = diamond();
        let ax = vec![j(&b, "1", &["b", "c"]), j(&b, "b", &["d"]), j(&b, "c", &["d"])];
        FormalPresentation::new(b, ax).unwrap()
    }

    #[test]
    fn table_validation() {
        let names = ["1", "x"];
        assert_eq!(
            FormalBase::new(&names, &[vec![0, 1], vec![0, 0]], "1").unwrap_err(),
            FormalError::NotCommutative("1".into(), "x".into())
        );
        assert_eq!(
            FormalBase::new(&names, &[vec![0, 1], vec![1, 0]], "x").unwrap_err(),
            FormalError::NoUnit
        );
    }

    #[test]
    fn spec_examples() {
        let p = fixture();
        let b = p.base().clone();
        assert!(entails(&p, &j(&b, "b", &["b"])).unwrap());
        assert!(entails(&p, &j(&b, "1", &["d"])).unwrap());
        let empty = FormalPresentation::new(b.clone(), []).unwrap();
        assert!(!entails(&empty, &j(&b, "b", &[])).unwrap());
        let leaf = derivation(&p, &j(&b, "b", &["b"])).unwrap().unwrap();
        assert_eq!(leaf.depth(), 1);
        let d = derivation(&p, &j(&b, "1", &["d"])).unwrap().unwrap();
        assert_eq!(d.depth(), 2);
        assert_eq!(d.rule, Rule::Transitive);
        assert!(derivation(&empty, &j(&b, "1", &["d"])).unwrap().is_none());
    }

    #[test]
    fn closure_passes_audit_and_matches_covering_engine() {
        let p = fixture();
        let e = p.saturate();
        assert!(e.audit().unwrap().is_empty());
        let (r, _) = saturate(&to_covering_relation(&p));
        for a in p.base().elements() {
            for m in 0..16 {
                let jm = Judgment { subject: a, cover: cover_of(m) };
                assert_eq!(e.holds(&jm).unwrap(), r.holds(a, &jm.cover), "{jm:?}");
            }
        }
    }

    #[test]
    fn unit_covers_form_a_locally_fine_monoid() {
        let m = covers_of_unit(&fixture());
        assert!(m.is_locally_fine().unwrap());
        let d = m.carrier().cover_of_names(&["d"]).unwrap();
        assert!(m.member(&d).unwrap());
        let (l, _) = m.lambda_close(Derivative::Slowed).unwrap();
        assert_eq!(l.base_covers(m.carrier().top()), m.base_covers(m.carrier().top()));
    }

    #[test]
    fn small_monoid_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| commutative_monoids(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }
}
