//! Polynomials in x_1..x_n with symmetric-group and subgroup actions, the
//! transfer map, monomial-symmetric (m-basis) expansion, and conversion into
//! the elementary-symmetric generators.
//!
//! Symmetric polynomials are canonically held in the m-basis: x-expansions
//! blow up with orbit size, while every computation downstream consumes m-
//! or e-coefficients.

use crate::arith::{Coeff, Fp, Prime, Rational};
use crate::combin::{Partition, Perm, PermGroupSpec, DEFAULT_GROUP_LIMIT};
use crate::epoly::{EMono, EPoly};
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyxError {
    #[error("polynomial is not symmetric (fails transposition ({0} {1}))")]
    NotSymmetric(usize, usize),
    #[error(transparent)]
    Group(#[from] crate::combin::CombinError),
}

/// Sparse polynomial in x_1..x_n over the coefficient ring C.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly<C: Coeff> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> XPoly<C> {
    pub fn zero(n: usize) -> Self {
        XPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, expo: &[u32], c: C) -> Self {
        assert_eq!(expo.len(), n);
        let mut p = XPoly::zero(n);
        p.add_term(expo.to_vec(), c);
        p
    }

    pub fn constant(n: usize, c: C) -> Self {
        XPoly::monomial(n, &vec![0; n], c)
    }

    /// The elementary symmetric polynomial e_i(x_1..x_n).
    pub fn elementary(n: usize, i: usize, one: &C) -> Self {
        assert!(i <= n);
        let mut p = XPoly::zero(n);
        for subset in combinations(n, i) {
            let mut expo = vec![0u32; n];
            for j in subset {
                expo[j] = 1;
            }
            p.add_term(expo, one.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: C) {
        if c.c_is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().c_add(&c);
                if s.c_is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &XPoly<C>) -> XPoly<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &XPoly<C>) -> XPoly<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.c_neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> XPoly<C> {
        let mut out = XPoly::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.c_mul(c));
        }
        out
    }

    pub fn mul(&self, other: &XPoly<C>) -> XPoly<C> {
        let mut out = XPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.c_mul(cb));
            }
        }
        out
    }

    /// Variable permutation; a degree-preserving ring automorphism.
    pub fn act(&self, sigma: &Perm) -> XPoly<C> {
        let mut out = XPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(sigma.permute_exponents(m), c.clone());
        }
        out
    }

    /// Symmetry check against the adjacent transpositions, which generate
    /// the full symmetric group.
    pub fn symmetric_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.n.saturating_sub(1) {
            let s = Perm::adjacent_transposition(self.n, i);
            if self.act(&s) != *self {
                return Some((i + 1, i + 2));
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_defect().is_none()
    }
}

impl<C: Coeff> fmt::Debug for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x^{m:?}")?;
        }
        Ok(())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Symmetric polynomial stored by its monomial-symmetric coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly<C: Coeff> {
    n: usize,
    coeffs: BTreeMap<Partition, C>,
}

impl<C: Coeff> SymPoly<C> {
    pub fn zero(n: usize) -> Self {
        SymPoly {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn term(n: usize, lambda: Partition, c: C) -> Self {
        assert_eq!(lambda.len(), n);
        let mut p = SymPoly::zero(n);
        p.add_term(lambda, c);
        p
    }

    pub fn one(n: usize, one: C) -> Self {
        SymPoly::term(n, Partition::zero(n), one)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Option<&C> {
        self.coeffs.get(lambda)
    }

    pub fn add_term(&mut self, lambda: Partition, c: C) {
        if c.c_is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().c_add(&c);
                if s.c_is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly<C>) -> SymPoly<C> {
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly<C>) -> SymPoly<C> {
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.c_neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> SymPoly<C> {
        let mut out = SymPoly::zero(self.n);
        for (l, a) in &self.coeffs {
            out.add_term(l.clone(), a.c_mul(c));
        }
        out
    }

    /// Multiply by e_i in the m-basis. The coefficient of m_nu in m_mu * e_i
    /// counts subsets S of the n coordinate positions with |S| = i such that
    /// nu - 1_S is a rearrangement of mu.
    pub fn mul_elementary(&self, i: usize) -> SymPoly<C> {
        let n = self.n;
        let subsets = combinations(n, i);
        let mut out = SymPoly::zero(n);
        for (mu, c) in &self.coeffs {
            let mut candidates: HashSet<Partition> = HashSet::new();
            for s in &subsets {
                let mut v = mu.parts().to_vec();
                for &j in s {
                    v[j] += 1;
                }
                candidates.insert(Partition::from_exponents(&v));
            }
            for nu in candidates {
                let mut count = 0i64;
                for s in &subsets {
                    let mut ok = true;
                    let mut v = nu.parts().to_vec();
                    for &j in s {
                        if v[j] == 0 {
                            ok = false;
                            break;
                        }
                        v[j] -= 1;
                    }
                    if ok && Partition::from_exponents(&v) == *mu {
                        count += 1;
                    }
                }
                if count != 0 {
                    out.add_term(nu, c.c_mul(&c.c_from_i64(count)));
                }
            }
        }
        out
    }

    /// Expand into x-variables as the sum of orbit sums (test oracle; orbit
    /// sizes grow like n!).
    pub fn expand_x(&self) -> XPoly<C> {
        let mut out = XPoly::zero(self.n);
        for (lambda, c) in &self.coeffs {
            for alpha in distinct_rearrangements(lambda.parts()) {
                out.add_term(alpha, c.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for SymPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*m{l}")?;
        }
        Ok(())
    }
}

/// All distinct rearrangements of an exponent vector (the monomial orbit).
pub fn distinct_rearrangements(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts.len());
    fn rec(remaining: &mut Vec<u32>, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        let mut last: Option<u32> = None;
        for i in 0..remaining.len() {
            let v = remaining[i];
            if last == Some(v) {
                continue;
            }
            last = Some(v);
            remaining.remove(i);
            current.push(v);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, v);
        }
    }
    rec(&mut sorted, &mut current, &mut out);
    out
}

/// Serialization shape for a symmetric polynomial: a JSON list of
/// {partition, coefficient-as-string}.
#[derive(Serialize)]
pub struct SymTermJson {
    pub partition: Partition,
    pub coefficient: String,
}

pub fn sym_poly_json<C: Coeff>(f: &SymPoly<C>) -> Vec<SymTermJson> {
    f.coeffs()
        .map(|(l, c)| SymTermJson {
            partition: l.clone(),
            coefficient: format!("{c}"),
        })
        .collect()
}

/// Transfer of the monomial x^lambda across the full symmetric group:
/// a_lambda * m_lambda, where a_lambda is the stabilizer order. Over F_p the
/// scalar reduces mod p and may vanish.
pub fn transfer_monomial<C: Coeff>(lambda: &Partition, one: &C) -> SymPoly<C> {
    let a = lambda.stabilizer_order();
    let c = one.c_from_i64(a as i64);
    SymPoly::term(lambda.len(), lambda.clone(), c)
}

pub fn transfer_monomial_q(lambda: &Partition) -> SymPoly<Rational> {
    transfer_monomial(lambda, &Rational::one())
}

pub fn transfer_monomial_fp(lambda: &Partition, p: Prime) -> SymPoly<Fp> {
    transfer_monomial(lambda, &Fp::one(p))
}

/// Exact sum of g(f) over all elements of H.
pub fn subgroup_transfer<C: Coeff>(
    group: &PermGroupSpec,
    f: &XPoly<C>,
) -> Result<XPoly<C>, PolyxError> {
    let elements = group.elements(DEFAULT_GROUP_LIMIT)?;
    let mut acc = XPoly::zero(f.nvars());
    for g in &elements {
        acc = acc.add(&f.act(g));
    }
    Ok(acc)
}

/// The unique m-basis expansion of a symmetric polynomial: read off the
/// coefficients at weakly decreasing exponents (constant on orbits once
/// symmetry holds).
pub fn expand_m_basis<C: Coeff>(f: &XPoly<C>) -> Result<SymPoly<C>, PolyxError> {
    if let Some((i, j)) = f.symmetric_defect() {
        return Err(PolyxError::NotSymmetric(i, j));
    }
    let mut out = SymPoly::zero(f.nvars());
    for (m, c) in f.terms() {
        if m.windows(2).all(|w| w[0] >= w[1]) {
            out.add_term(Partition::new(m.clone()), c.clone());
        }
    }
    Ok(out)
}

/// Memoizing expander for products of elementary symmetric polynomials in
/// the m-basis.
pub struct ElemExpander<C: Coeff> {
    n: usize,
    one: C,
    cache: HashMap<EMono, SymPoly<C>>,
}

impl<C: Coeff> ElemExpander<C> {
    pub fn new(n: usize, one: C) -> Self {
        ElemExpander {
            n,
            one,
            cache: HashMap::new(),
        }
    }

    /// m-basis expansion of the product prod_i e_i^{mono_i}.
    pub fn expand(&mut self, mono: &EMono) -> SymPoly<C> {
        if let Some(hit) = self.cache.get(mono) {
            return hit.clone();
        }
        let result = if mono.is_one() {
            SymPoly::one(self.n, self.one.clone())
        } else {
            let i = (1..=self.n)
                .find(|&i| mono.exponent(i) > 0)
                .expect("nonzero monomial");
            let reduced = mono.div(&EMono::var(self.n, i)).unwrap();
            self.expand(&reduced).mul_elementary(i)
        };
        self.cache.insert(*mono, result.clone());
        result
    }
}

/// Rewrite a symmetric polynomial (in the m-basis) as a polynomial in
/// e_1..e_n: repeatedly subtract the e-monomial matching the
/// dominance-maximal remaining m-term. Terminates by dominance descent
/// within each degree stratum.
pub fn to_elementary<C: Coeff>(f: &SymPoly<C>, expander: &mut ElemExpander<C>) -> EPoly<C> {
    let n = f.nvars();
    let mut work = f.clone();
    let mut out = EPoly::zero(n);
    while let Some((lambda, c)) = work.coeffs.last_key_value() {
        let lambda = lambda.clone();
        let c = c.clone();
        // exponent of e_i is the multiplicity of i among the conjugate
        // parts, i.e. lambda_i - lambda_{i+1}
        let parts = lambda.parts();
        let mut exps = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { parts[i + 1] } else { 0 };
            exps[i] = parts[i] - next;
        }
        let emono = EMono::from_exponents(n, &exps);
        let expansion = expander.expand(&emono);
        debug_assert_eq!(
            expansion.coefficient(&lambda).map(|c| c.c_is_one()),
            Some(true),
            "expansion of {emono:?} is not monic at {lambda:?}"
        );
        work = work.sub(&expansion.scale(&c));
        out = out.add(&EPoly::from_terms(n, vec![(emono, c)]));
        debug_assert!(work.coefficient(&lambda).is_none());
    }
    out
}

pub fn to_elementary_q(f: &SymPoly<Rational>) -> EPoly<Rational> {
    let mut expander = ElemExpander::new(f.nvars(), Rational::one());
    to_elementary(f, &mut expander)
}

/// Substitute e_i(x_1..x_n) into a polynomial in e_1..e_n (test oracle).
pub fn eval_elementary<C: Coeff>(f: &EPoly<C>, one: &C) -> XPoly<C> {
    let n = f.nvars();
    let mut out = XPoly::zero(n);
    for (mono, c) in f.terms() {
        let mut term = XPoly::constant(n, c.clone());
        for i in 1..=n {
            for _ in 0..mono.exponent(i) {
                term = term.mul(&XPoly::elementary(n, i, one));
            }
        }
        out = out.add(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;
    use crate::combin::enumerate_partitions;

    fn q(v: i64) -> Rational {
        rational_int(v)
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn act_examples() {
        let f = XPoly::monomial(3, &[2, 1, 0], q(1));
        let swap = Perm::adjacent_transposition(3, 0);
        assert_eq!(f.act(&swap), XPoly::monomial(3, &[1, 2, 0], q(1)));
        assert_eq!(f.act(&Perm::identity(3)), f);
        let e2 = XPoly::elementary(3, 2, &q(1));
        let rot = Perm::cycle(3, &[0, 1, 2]);
        assert_eq!(e2.act(&rot), e2);
    }

    #[test]
    fn transfer_monomial_examples() {
        let t = transfer_monomial_q(&pt(&[1, 1, 0]));
        assert_eq!(t.coefficient(&pt(&[1, 1, 0])), Some(&q(2)));
        let t0 = transfer_monomial_q(&Partition::zero(3));
        assert_eq!(t0.coefficient(&Partition::zero(3)), Some(&q(6)));
        let t210 = transfer_monomial_q(&pt(&[2, 1, 0]));
        assert_eq!(t210.coefficient(&pt(&[2, 1, 0])), Some(&q(1)));
    }

    #[test]
    fn transfer_matches_brute_force_sum() {
        // sum over all of S_n of sigma(x^lambda) = a_lambda * m_lambda
        for n in 1..=5usize {
            let sn = PermGroupSpec::symmetric(n);
            for d in 0..=6u32 {
                for lambda in enumerate_partitions(d, n) {
                    let f = XPoly::monomial(n, lambda.parts(), q(1));
                    let brute = subgroup_transfer(&sn, &f).unwrap();
                    let fast = transfer_monomial_q(&lambda).expand_x();
                    assert_eq!(brute, fast, "mismatch at {lambda:?}");
                }
            }
        }
    }

    #[test]
    fn subgroup_transfer_examples() {
        let x1 = XPoly::monomial(3, &[1, 0, 0], q(1));
        let t = subgroup_transfer(&PermGroupSpec::symmetric(3), &x1).unwrap();
        assert_eq!(t, XPoly::elementary(3, 1, &q(1)).scale(&q(2)));

        let f = XPoly::monomial(2, &[3, 1], q(7));
        let t = subgroup_transfer(&PermGroupSpec::trivial(2), &f).unwrap();
        assert_eq!(t, f);

        let p3 = Prime::new(3).unwrap();
        let syl = crate::combin::sylow_generators(5, p3).unwrap();
        let x4 = XPoly::monomial(5, &[0, 0, 0, 1, 0], q(1));
        let t = subgroup_transfer(&syl, &x4).unwrap();
        assert_eq!(t, x4.scale(&q(3)));
    }

    #[test]
    fn transfer_is_invariant_linear() {
        // Tr(g*f) = g*Tr(f) for symmetric g
        let n = 4;
        let sn = PermGroupSpec::symmetric(n);
        let g = XPoly::elementary(n, 2, &q(1));
        let f = XPoly::monomial(n, &[2, 1, 0, 0], q(1)).add(&XPoly::monomial(n, &[3, 0, 0, 0], q(2)));
        let lhs = subgroup_transfer(&sn, &g.mul(&f)).unwrap();
        let rhs = g.mul(&subgroup_transfer(&sn, &f).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn expand_m_basis_examples() {
        let n = 2;
        let e1 = XPoly::elementary(n, 1, &q(1));
        let sq = expand_m_basis(&e1.mul(&e1)).unwrap();
        assert_eq!(sq.coefficient(&pt(&[2, 0])), Some(&q(1)));
        assert_eq!(sq.coefficient(&pt(&[1, 1])), Some(&q(2)));

        // e_k expands to m_(1^k)
        let e3 = XPoly::elementary(4, 3, &q(1));
        let m = expand_m_basis(&e3).unwrap();
        assert_eq!(m.coefficient(&pt(&[1, 1, 1, 0])), Some(&q(1)));
        assert_eq!(m.coeffs().count(), 1);

        // e_1 e_3 - e_4 at n = 4: coefficients 3 and 1
        let n = 4;
        let f = XPoly::elementary(n, 1, &q(1))
            .mul(&XPoly::elementary(n, 3, &q(1)))
            .sub(&XPoly::elementary(n, 4, &q(1)));
        let m = expand_m_basis(&f).unwrap();
        assert_eq!(m.coefficient(&pt(&[1, 1, 1, 1])), Some(&q(3)));
        assert_eq!(m.coefficient(&pt(&[2, 1, 1, 0])), Some(&q(1)));
        assert_eq!(m.coeffs().count(), 2);

        let bad = XPoly::monomial(2, &[1, 0], q(1));
        assert!(matches!(
            expand_m_basis(&bad),
            Err(PolyxError::NotSymmetric(1, 2))
        ));
    }

    #[test]
    fn mul_elementary_matches_x_expansion() {
        for n in 2..=4usize {
            for d in 0..=4u32 {
                for mu in enumerate_partitions(d, n) {
                    for i in 1..=n {
                        let sym = SymPoly::term(n, mu.clone(), q(1)).mul_elementary(i);
                        let x = SymPoly::term(n, mu.clone(), q(1))
                            .expand_x()
                            .mul(&XPoly::elementary(n, i, &q(1)));
                        assert_eq!(sym.expand_x(), x, "n={n} mu={mu:?} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn to_elementary_examples() {
        let n = 3;
        let m1 = SymPoly::term(n, pt(&[1, 0, 0]), q(1));
        assert_eq!(format!("{}", to_elementary_q(&m1)), "e1");
        let m11 = SymPoly::term(n, pt(&[1, 1, 0]), q(1));
        assert_eq!(format!("{}", to_elementary_q(&m11)), "e2");
        let m2 = SymPoly::term(n, pt(&[2, 0, 0]), q(1));
        let g = to_elementary_q(&m2);
        assert_eq!(format!("{g}"), "e1^2-2e2");
        // oracle: evaluate back into x-variables
        assert_eq!(eval_elementary(&g, &q(1)), m2.expand_x());
    }

    #[test]
    fn to_elementary_round_trip() {
        // e-polynomial -> x form -> m-basis -> back, degrees <= 8, n <= 5
        for n in 1..=5usize {
            let samples: Vec<EPoly<Rational>> = vec![
                EPoly::var(n, 1, q(3)),
                EPoly::var(n, 1, q(1)).mul(&EPoly::var(n, (n + 1) / 2, q(1))),
                EPoly::var(n, n, q(2)).add(&EPoly::var(n, 1, q(-1)).mul(&EPoly::var(n, 1, q(1)))),
            ];
            for ep in samples {
                let x = eval_elementary(&ep, &q(1));
                let m = expand_m_basis(&x).unwrap();
                let back = to_elementary_q(&m);
                assert_eq!(back, ep);
            }
        }
    }

    #[test]
    fn transfer_diagonal_independence() {
        // char-0 injectivity on a degree stratum: the matrix of
        // m-coefficients of transfers is diagonal with entries a_lambda != 0
        for n in 2..=5usize {
            for d in 0..=6u32 {
                for lambda in enumerate_partitions(d, n) {
                    let t = transfer_monomial_q(&lambda);
                    assert_eq!(t.coeffs().count(), 1);
                    let c = t.coefficient(&lambda).unwrap();
                    assert!(!c.c_is_zero());
                    assert_eq!(*c, q(lambda.stabilizer_order() as i64));
                }
            }
        }
    }

    #[test]
    fn transfer_mod_p_can_vanish() {
        let p2 = Prime::new(2).unwrap();
        let t = transfer_monomial_fp(&pt(&[1, 1, 0]), p2);
        assert!(t.is_zero()); // stabilizer order 2 vanishes mod 2
        let t = transfer_monomial_fp(&pt(&[2, 1, 0]), p2);
        assert!(!t.is_zero());
    }
}
