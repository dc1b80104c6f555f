//! Fixtures, corpora and brute-force oracles shared by the integration tests
//! and the acceptance suite. Oracles work on raw bitmasks and never call the
//! library's refinement or meet code.
#![allow(dead_code)]

use pointfree_core::covering::UniformMonoid;
use pointfree_core::frames::{Frame, SpaceDescription};
use pointfree_core::order::{Cover, PointSet, SubsetCarrier};
use rand::Rng;

pub fn carrier(n: usize) -> SubsetCarrier {
    SubsetCarrier::new((0..n).map(|i| i.to_string())).unwrap()
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Keeps only the maximal nonempty masks, sorted.
pub fn maximal(masks: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| m != 0)
        .filter(|&m| !masks.iter().any(|&o| o != m && m & o == m))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn to_cover(masks: &[u64]) -> Cover<PointSet> {
    Cover::raw(masks.iter().map(|&m| PointSet(m)))
}

pub fn masks(c: &Cover<PointSet>) -> Vec<u64> {
    c.members().iter().map(|p| p.0).collect()
}

/// Every antichain of nonempty subsets of `n` points whose union is all of
/// them.
pub fn all_covers(n: usize) -> Vec<Cover<PointSet>> {
    let subsets: Vec<u64> = (1..=full(n)).collect();
    let mut out = Vec::new();
    for fam in 0u64..(1 << subsets.len()) {
        let ms: Vec<u64> = (0..subsets.len())
            .filter(|i| fam >> i & 1 == 1)
            .map(|i| subsets[i])
            .collect();
        if ms.iter().fold(0, |a, m| a | m) != full(n) {
            continue;
        }
        if maximal(&ms).len() != ms.len() {
            continue;
        }
        out.push(to_cover(&ms));
    }
    out
}

/// All bases of at most two covers of `n` points, as unordered pairs.
pub fn small_bases(n: usize) -> Vec<Vec<Cover<PointSet>>> {
    let cs = all_covers(n);
    let mut out = vec![Vec::new()];
    for (i, a) in cs.iter().enumerate() {
        out.push(vec![a.clone()]);
        for b in &cs[i + 1..] {
            out.push(vec![a.clone(), b.clone()]);
        }
    }
    out
}

pub fn monoid(n: usize, basis: &[Cover<PointSet>]) -> UniformMonoid {
    UniformMonoid::new(carrier(n), basis.to_vec()).unwrap()
}

/// The exhaustive corpus: every monoid on three points with at most two
/// basis covers.
pub fn corpus3() -> Vec<UniformMonoid> {
    small_bases(3).iter().map(|b| monoid(3, b)).collect()
}

pub fn random_cover(rng: &mut impl Rng, n: usize) -> Vec<u64> {
    let k = rng.gen_range(1..=4);
    let mut ms: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=full(n))).collect();
    let missing = full(n) & !ms.iter().fold(0, |a, m| a | m);
    if missing != 0 {
        ms.push(missing);
    }
    maximal(&ms)
}

/// A random monoid on 1 to 5 points with at most three basis covers.
pub fn random_basis(rng: &mut impl Rng) -> (usize, Vec<Vec<u64>>) {
    let n = rng.gen_range(1..=5);
    let k = rng.gen_range(0..=3);
    (n, (0..k).map(|_| random_cover(rng, n)).collect())
}

pub fn refines(u: &[u64], v: &[u64]) -> bool {
    u.iter().all(|&a| a == 0 || v.iter().any(|&b| a & b == a))
}

pub fn meet(u: &[u64], v: &[u64]) -> Vec<u64> {
    let all: Vec<u64> = u.iter().flat_map(|&a| v.iter().map(move |&b| a & b)).collect();
    maximal(&all)
}

/// Brute-force meet closure, starting from the one-member cover.
pub fn meet_closure(n: usize, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut set: Vec<Vec<u64>> = vec![vec![full(n)]];
    loop {
        let mut grew = false;
        for i in 0..set.len() {
            for b in basis.iter().chain(set.clone().iter()) {
                let m = meet(&set[i], b);
                if !set.contains(&m) {
                    set.push(m);
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

pub fn member(closure: &[Vec<u64>], v: &[u64]) -> bool {
    closure.iter().any(|c| refines(c, v))
}

/// The covers probed for membership: everything in the closure, its
/// coarsenings by merging two members, and a batch of random covers.
pub fn probes(rng: &mut impl Rng, n: usize, closure: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = closure.to_vec();
    for c in closure {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let mut m: Vec<u64> = c.clone();
                m[i] |= m[j];
                out.push(maximal(&m));
            }
        }
    }
    for _ in 0..16 {
        out.push(random_cover(rng, n));
    }
    out
}

pub fn point() -> SpaceDescription {
    SpaceDescription::from_names(&["p"], &[&[], &["p"]]).unwrap()
}

pub fn sierpinski() -> SpaceDescription {
    SpaceDescription::from_names(&["a", "b"], &[&[], &["b"], &["a", "b"]]).unwrap()
}

pub fn discrete(n: usize) -> SpaceDescription {
    let c = carrier(n);
    let opens = (0..=full(n)).map(PointSet).collect();
    SpaceDescription::new(c, opens).unwrap()
}

pub fn chain3() -> SpaceDescription {
    SpaceDescription::from_names(&["a", "b", "c"], &[&[], &["c"], &["b", "c"], &["a", "b", "c"]])
        .unwrap()
}

/// The four factor spaces of the coproduct oracle.
pub fn factor_spaces() -> Vec<(&'static str, SpaceDescription)> {
    vec![
        ("point", point()),
        ("sierpinski", sierpinski()),
        ("discrete-2", discrete(2)),
        ("chain-3", chain3()),
    ]
}

/// Every topology on `n` points, as families of masks.
pub fn topologies(n: usize) -> Vec<Vec<u64>> {
    let inner: Vec<u64> = (1..full(n)).collect();
    let mut out = Vec::new();
    for fam in 0u64..(1 << inner.len()) {
        let mut opens: Vec<u64> = vec![0, full(n)];
        opens.extend((0..inner.len()).filter(|i| fam >> i & 1 == 1).map(|i| inner[i]));
        let closed = opens
            .iter()
            .all(|a| opens.iter().all(|b| opens.contains(&(a | b)) && opens.contains(&(a & b))));
        if closed {
            opens.sort();
            opens.dedup();
            out.push(opens);
        }
    }
    out
}

pub fn is_t0(n: usize, opens: &[u64]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| x == y || opens.iter().any(|o| (o >> x & 1) != (o >> y & 1)))
    })
}

pub fn space(n: usize, opens: &[u64]) -> SpaceDescription {
    SpaceDescription::new(carrier(n), opens.iter().map(|&m| PointSet(m)).collect()).unwrap()
}

pub fn chain_frame(k: usize) -> Frame {
    let names: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Frame::from_relation(&names, &pairs).unwrap()
}

pub fn boolean4() -> Frame {
    let names = ["0", "a", "b", "1"];
    Frame::from_relation(&names, &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
}

/// Topology frames of the three-point T0 spaces with six opens.
pub fn six_element_spaces() -> Vec<SpaceDescription> {
    topologies(3)
        .into_iter()
        .filter(|t| t.len() == 6 && is_t0(3, t))
        .map(|t| space(3, &t))
        .collect()
}
