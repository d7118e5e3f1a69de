//! Partition combinatorics and small permutation groups: enumeration in a
//! fixed dominance-compatible order, special partitions, stabilizer orders,
//! the Artin basis, and Sylow p-subgroup generators for desk-scale n.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CombinError {
    #[error("partitions have different degrees ({0} vs {1})")]
    DegreeMismatch(u32, u32),
    #[error("partitions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("sylow construction needs n < p^2, got n={n}, p={p}")]
    SylowOutOfRange { n: usize, p: u64 },
    #[error("group order limit {limit} exceeded during enumeration")]
    GroupTooLarge { limit: usize },
}

/// A weakly decreasing exponent tuple of fixed length; trailing zeros are
/// kept because both Def-3.3-style bounds and stabilizer orders depend on
/// the multiplicity of zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Sorts the input descending and keeps the given length.
    pub fn from_exponents(expo: &[u32]) -> Self {
        let mut parts = expo.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn new(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]), "not weakly decreasing");
        Partition { parts }
    }

    pub fn zero(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn nonzero_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    /// Both conditions of the special-monomial definition: part j bounded by
    /// n - j, and consecutive differences in {0, 1}.
    pub fn is_special(&self) -> bool {
        let n = self.parts.len();
        for (j, &part) in self.parts.iter().enumerate() {
            if part as usize > n - (j + 1) {
                return false;
            }
        }
        self.parts.windows(2).all(|w| w[0] - w[1] <= 1)
    }

    /// Product over distinct part values (zero included) of multiplicity
    /// factorials; equals |Stab(x^lambda)| under coordinate permutation.
    pub fn stabilizer_order(&self) -> u64 {
        let mut order = 1u64;
        let mut run = 1u64;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                order *= run;
            } else {
                run = 1;
            }
        }
        order
    }

    pub fn orbit_size(&self) -> u64 {
        factorial_u64(self.parts.len() as u64) / self.stabilizer_order()
    }

    /// Prefix-sum comparison: true iff self is dominated by `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, CombinError> {
        if self.len() != other.len() {
            return Err(CombinError::LengthMismatch(self.len(), other.len()));
        }
        if self.degree() != other.degree() {
            return Err(CombinError::DegreeMismatch(self.degree(), other.degree()));
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for (x, y) in self.parts.iter().zip(other.parts.iter()) {
            a += u64::from(*x);
            b += u64::from(*y);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subtract 1 from every nonzero part (the reduction step of the
    /// degree-and-dominance induction).
    pub fn reduce_nonzero(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p.saturating_sub(1)).collect(),
        }
    }
}

pub fn factorial_u64(n: u64) -> u64 {
    (1..=n).product()
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All partitions of `degree` with at most `n` nonzero parts, padded to
/// length `n`, in descending lexicographic order (a linear extension of
/// reverse dominance: dominating partitions come first).
pub fn enumerate_partitions(degree: u32, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(rem: u32, slots: usize, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(Partition::new(current.clone()));
            }
            return;
        }
        // Parts are emitted largest-first, so the whole list comes out in
        // descending lexicographic order.
        let hi = rem.min(max);
        let lo = rem.div_ceil(slots as u32);
        let mut part = hi;
        loop {
            if part < lo {
                break;
            }
            current.push(part);
            rec(rem - part, slots - 1, part, current, out);
            current.pop();
            if part == 0 {
                break;
            }
            part -= 1;
        }
    }
    rec(degree, n, degree, &mut current, &mut out);
    out
}

/// All special partitions of length n across every degree (bounded by the
/// staircase degree 0 + 1 + ... + (n-1)), ordered by degree then descending
/// lex.
pub fn special_partitions(n: usize) -> Vec<Partition> {
    let max_degree: u32 = (0..n as u32).sum();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for lambda in enumerate_partitions(d, n) {
            if lambda.is_special() {
                out.push(lambda);
            }
        }
    }
    out
}

/// The sub-staircase exponent tuples 0 <= a_i <= n - i; exactly n! of them.
pub fn artin_basis(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 1..=n {
        let cap = (n - i) as u32;
        let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
        for prefix in &out {
            for a in 0..=cap {
                let mut t = prefix.clone();
                t.push(a);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// A permutation of {0..n-1} in image form: `images[i]` is where i goes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a bijection");
            seen[i] = true;
        }
        Perm { images }
    }

    /// Cycle through the given 0-indexed points, fixing everything else.
    pub fn cycle(n: usize, points: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for w in points.windows(2) {
            images[w[0]] = w[1];
        }
        if points.len() > 1 {
            images[*points.last().unwrap()] = points[0];
        }
        Perm { images }
    }

    /// Adjacent transposition (i, i+1), 0-indexed.
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        Perm::cycle(n, &[i, i + 1])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn compose(&self, then: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| then.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// Pushforward of an exponent vector: position sigma(i) receives the
    /// exponent previously at i, matching the action on monomials.
    pub fn permute_exponents(&self, expo: &[u32]) -> Vec<u32> {
        let mut out = vec![0; expo.len()];
        for (i, &e) in expo.iter().enumerate() {
            out[self.images[i]] = e;
        }
        out
    }
}

/// A finite permutation group given by generators, enumerable by closure up
/// to a configured order limit.
#[derive(Clone, Debug)]
pub struct PermGroupSpec {
    degree: usize,
    generators: Vec<Perm>,
}

pub const DEFAULT_GROUP_LIMIT: usize = 100_000;

impl PermGroupSpec {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        PermGroupSpec { degree, generators }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroupSpec {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut generators = Vec::new();
        if degree >= 2 {
            generators.push(Perm::adjacent_transposition(degree, 0));
            generators.push(Perm::cycle(degree, &(0..degree).collect::<Vec<_>>()));
        }
        PermGroupSpec { degree, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// BFS closure of the generators; errors out past `limit` elements.
    pub fn elements(&self, limit: usize) -> Result<Vec<Perm>, CombinError> {
        let id = Perm::identity(self.degree);
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        order.push(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.compose(s);
                if seen.insert(h.clone()) {
                    if order.len() >= limit {
                        return Err(CombinError::GroupTooLarge { limit });
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order)
    }

    pub fn order(&self, limit: usize) -> Result<usize, CombinError> {
        Ok(self.elements(limit)?.len())
    }
}

/// Generators of a Sylow p-subgroup of S_n for n < p^2: disjoint p-cycles
/// ((k-1)p+1 ... kp) for k = 1..floor(n/p). Points past p*floor(n/p) are
/// fixed. Larger n would need wreath products, which are out of range here.
pub fn sylow_generators(n: usize, p: crate::arith::Prime) -> Result<PermGroupSpec, CombinError> {
    let pu = p.get() as usize;
    if n >= pu * pu {
        return Err(CombinError::SylowOutOfRange { n, p: p.get() });
    }
    let mut generators = Vec::new();
    for k in 0..n / pu {
        let points: Vec<usize> = (k * pu..(k + 1) * pu).collect();
        generators.push(Perm::cycle(n, &points));
    }
    Ok(PermGroupSpec {
        degree: n,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_small() {
        let got = enumerate_partitions(2, 3);
        assert_eq!(got, vec![pt(&[2, 0, 0]), pt(&[1, 1, 0])]);
        assert_eq!(enumerate_partitions(0, 4), vec![pt(&[0, 0, 0, 0])]);
        // brute-force oracle: weakly decreasing triples summing to 6
        let mut count = 0;
        for a in 0..=6u32 {
            for b in 0..=a {
                for c in 0..=b {
                    if a + b + c == 6 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 7);
        assert_eq!(enumerate_partitions(6, 3).len(), 7);
    }

    #[test]
    fn enumeration_order_is_descending_lex() {
        let list = enumerate_partitions(6, 3);
        for w in list.windows(2) {
            assert!(w[0].parts() > w[1].parts());
        }
        // descending lex extends reverse dominance: mu <=dom lambda implies
        // lambda listed no later than mu
        for (i, a) in list.iter().enumerate() {
            for b in list.iter().skip(i + 1) {
                assert!(!a.dominance_leq(b).unwrap() || a == b);
            }
        }
    }

    #[test]
    fn special_examples() {
        assert!(pt(&[2, 1, 0]).is_special());
        assert!(!pt(&[1, 1, 1]).is_special());
        assert!(pt(&[0, 0, 0]).is_special());
        assert!(!pt(&[2, 0, 0]).is_special()); // difference 2
        assert_eq!(special_partitions(1), vec![pt(&[0])]);
        // Def 3.3 at n = 2: part 2 must vanish, so (1,1) is excluded.
        assert_eq!(special_partitions(2), vec![pt(&[0, 0]), pt(&[1, 0])]);
    }

    #[test]
    fn special_n3_matches_the_13_listed_monomials() {
        let sp = special_partitions(3);
        assert_eq!(
            sp,
            vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[1, 1, 0]), pt(&[2, 1, 0])]
        );
        let monomials: u64 = sp.iter().map(|l| l.orbit_size()).sum();
        assert_eq!(monomials, 13);
    }

    #[test]
    fn special_closed_under_nonzero_reduction() {
        for n in 1..=7 {
            let sp: HashSet<Partition> = special_partitions(n).into_iter().collect();
            for lambda in &sp {
                assert!(
                    sp.contains(&lambda.reduce_nonzero()),
                    "reduction of {lambda:?} escaped"
                );
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(pt(&[1, 1, 1, 1]).stabilizer_order(), 24);
        assert_eq!(Partition::zero(5).stabilizer_order(), 120);
        assert_eq!(pt(&[2, 1, 0]).stabilizer_order(), 1);
        assert_eq!(pt(&[2, 2, 1, 0, 0]).stabilizer_order(), 4);
    }

    #[test]
    fn orbit_stabilizer_brute_force() {
        for n in 1..=6usize {
            let group = PermGroupSpec::symmetric(n).elements(1000).unwrap();
            assert_eq!(group.len(), factorial_u64(n as u64) as usize);
            for d in 0..=6u32 {
                for lambda in enumerate_partitions(d, n) {
                    let orbit: HashSet<Vec<u32>> = group
                        .iter()
                        .map(|g| g.permute_exponents(lambda.parts()))
                        .collect();
                    assert_eq!(
                        orbit.len() as u64 * lambda.stabilizer_order(),
                        factorial_u64(n as u64),
                        "orbit-stabilizer failed for {lambda:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(pt(&[1, 1, 1, 1]).dominance_leq(&pt(&[2, 1, 1, 0])).unwrap());
        assert!(pt(&[2, 2, 0]).dominance_leq(&pt(&[3, 1, 0])).unwrap());
        assert!(pt(&[2, 2]).dominance_leq(&pt(&[2, 2])).unwrap());
        assert!(!pt(&[3, 1, 0]).dominance_leq(&pt(&[2, 2, 0])).unwrap());
        assert!(!pt(&[2, 0]).dominance_leq(&pt(&[1, 1])).unwrap());
        assert!(pt(&[2, 0]).dominance_leq(&pt(&[1, 0])).is_err());
    }

    #[test]
    fn dominance_is_partial_order_per_degree() {
        for d in 0..=7u32 {
            let stratum = enumerate_partitions(d, 4);
            for a in &stratum {
                assert!(a.dominance_leq(a).unwrap());
                for b in &stratum {
                    if a.dominance_leq(b).unwrap() && b.dominance_leq(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &stratum {
                        if a.dominance_leq(b).unwrap() && b.dominance_leq(c).unwrap() {
                            assert!(a.dominance_leq(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn artin_basis_counts() {
        assert_eq!(artin_basis(1), vec![vec![0]]);
        assert_eq!(artin_basis(4).len(), 24);
        let weakly_decreasing: Vec<Vec<u32>> = artin_basis(3)
            .into_iter()
            .filter(|t| t.windows(2).all(|w| w[0] >= w[1]))
            .collect();
        assert_eq!(
            weakly_decreasing,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![2, 0, 0],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn sylow_examples() {
        let p3 = Prime::new(3).unwrap();
        let p2 = Prime::new(2).unwrap();
        let p5 = Prime::new(5).unwrap();
        let s = sylow_generators(5, p3).unwrap();
        assert_eq!(s.generators().len(), 1);
        assert_eq!(s.order(1000).unwrap(), 3);
        assert!(matches!(
            sylow_generators(4, p2),
            Err(CombinError::SylowOutOfRange { .. })
        ));
        let s75 = sylow_generators(7, p5).unwrap();
        assert_eq!(s75.order(1000).unwrap(), 5);
        for g in s75.generators() {
            assert_eq!(g.apply(5), 5);
            assert_eq!(g.apply(6), 6);
        }
    }

    #[test]
    fn sylow_orders_stable_within_block() {
        // kp <= n < m < (k+1)p with n, m < p^2: same order, and the
        // degree-n generators include into the degree-m ones.
        let cases = [(3u64, 3usize, 5usize), (3, 6, 8), (2, 2, 3)];
        for (p, n, m) in cases {
            let p = Prime::new(p).unwrap();
            let gn = sylow_generators(n, p).unwrap();
            let gm = sylow_generators(m, p).unwrap();
            assert_eq!(gn.order(10000).unwrap(), gm.order(10000).unwrap());
            for (a, b) in gn.generators().iter().zip(gm.generators().iter()) {
                for i in 0..n {
                    assert_eq!(a.apply(i), b.apply(i));
                }
                for i in n..m {
                    assert_eq!(b.apply(i), i);
                }
            }
        }
    }

    #[test]
    fn partitions_serialize_as_json_arrays() {
        let lambda = pt(&[2, 1, 0]);
        assert_eq!(serde_json::to_string(&lambda).unwrap(), "[2,1,0]");
        let back: Partition = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(back, lambda);
    }
}
