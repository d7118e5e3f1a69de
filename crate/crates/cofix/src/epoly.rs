//! The weighted-graded polynomial ring k[e_1..e_n] with deg(e_i) = i.
//! Monomials are packed exponent vectors ordered by weighted degree refined
//! by lexicographic e_1 > e_2 > ... > e_n; this is the one term order used
//! everywhere downstream (Groebner bases, syzygies, Betti degrees).

use crate::arith::{Coeff, Fp, Prime, Rational};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_VARS: usize = 9;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EPolyError {
    #[error("variable count {0} exceeds supported maximum {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
    #[error("mixed variable counts: {0} vs {1}")]
    MixedRings(usize, usize),
}

/// A monomial e_1^{a_1} ... e_n^{a_n}, with its weighted degree cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EMono {
    n: u8,
    wdeg: u32,
    exp: [u16; MAX_VARS],
}

impl EMono {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        EMono {
            n: n as u8,
            wdeg: 0,
            exp: [0; MAX_VARS],
        }
    }

    pub fn from_exponents(n: usize, exps: &[u32]) -> Self {
        assert!(n <= MAX_VARS && exps.len() == n);
        let mut m = EMono::one(n);
        for (i, &a) in exps.iter().enumerate() {
            assert!(a <= u16::MAX as u32);
            m.exp[i] = a as u16;
            m.wdeg += (i as u32 + 1) * a;
        }
        m
    }

    /// The single variable e_i (1-indexed).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n);
        let mut m = EMono::one(n);
        m.exp[i - 1] = 1;
        m.wdeg = i as u32;
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.exp[i - 1])
    }

    pub fn exponents(&self) -> Vec<u32> {
        (0..self.n as usize).map(|i| u32::from(self.exp[i])).collect()
    }

    pub fn weighted_degree(&self) -> u32 {
        self.wdeg
    }

    pub fn is_one(&self) -> bool {
        self.wdeg == 0
    }

    pub fn mul(&self, other: &EMono) -> EMono {
        debug_assert_eq!(self.n, other.n);
        let mut m = *self;
        for i in 0..self.n as usize {
            m.exp[i] += other.exp[i];
        }
        m.wdeg += other.wdeg;
        m
    }

    pub fn divides(&self, other: &EMono) -> bool {
        self.wdeg <= other.wdeg
            && (0..self.n as usize).all(|i| self.exp[i] <= other.exp[i])
    }

    pub fn div(&self, other: &EMono) -> Option<EMono> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..self.n as usize {
            m.exp[i] -= other.exp[i];
        }
        m.wdeg -= other.wdeg;
        Some(m)
    }

    pub fn lcm(&self, other: &EMono) -> EMono {
        let mut m = *self;
        m.wdeg = 0;
        for i in 0..self.n as usize {
            m.exp[i] = m.exp[i].max(other.exp[i]);
            m.wdeg += (i as u32 + 1) * u32::from(m.exp[i]);
        }
        m
    }

    pub fn coprime(&self, other: &EMono) -> bool {
        (0..self.n as usize).all(|i| self.exp[i] == 0 || other.exp[i] == 0)
    }
}

impl Ord for EMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.wdeg
            .cmp(&other.wdeg)
            .then_with(|| self.exp[..self.n as usize].cmp(&other.exp[..other.n as usize]))
    }
}

impl PartialOrd for EMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for i in 0..self.n as usize {
            match self.exp[i] {
                0 => {}
                1 => write!(f, "e{}", i + 1)?,
                a => write!(f, "e{}^{}", i + 1, a)?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over k[e_1..e_n]; terms sorted descending in the ring
/// order, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct EPoly<C: Coeff> {
    n: usize,
    terms: Vec<(EMono, C)>,
}

impl<C: Coeff> EPoly<C> {
    pub fn zero(n: usize) -> Self {
        EPoly { n, terms: Vec::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = EPoly::zero(n);
        if !c.c_is_zero() {
            p.terms.push((EMono::one(n), c));
        }
        p
    }

    pub fn var(n: usize, i: usize, c: C) -> Self {
        let mut p = EPoly::zero(n);
        if !c.c_is_zero() {
            p.terms.push((EMono::var(n, i), c));
        }
        p
    }

    pub fn from_terms(n: usize, terms: Vec<(EMono, C)>) -> Self {
        let mut map: BTreeMap<EMono, C> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), n);
            match map.entry(m) {
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
        let mut terms: Vec<(EMono, C)> =
            map.into_iter().filter(|(_, c)| !c.c_is_zero()).collect();
        terms.reverse();
        EPoly { n, terms }
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

    /// Terms in descending ring order.
    pub fn terms(&self) -> &[(EMono, C)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(EMono, C)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &EMono) -> Option<&C> {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn add(&self, other: &EPoly<C>) -> EPoly<C> {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &EPoly<C>) -> EPoly<C> {
        self.merge(other, true)
    }

    fn merge(&self, other: &EPoly<C>, subtract: bool) -> EPoly<C> {
        debug_assert_eq!(self.n, other.n);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Greater => {
                        out.push((*ma, ca.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        let c = if subtract { cb.c_neg() } else { cb.clone() };
                        out.push((*mb, c));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if subtract { ca.c_sub(cb) } else { ca.c_add(cb) };
                        if !c.c_is_zero() {
                            out.push((*ma, c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((*ma, ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    let c = if subtract { cb.c_neg() } else { cb.clone() };
                    out.push((*mb, c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        EPoly {
            n: self.n,
            terms: out,
        }
    }

    pub fn neg(&self) -> EPoly<C> {
        EPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, c.c_neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> EPoly<C> {
        if c.c_is_zero() {
            return EPoly::zero(self.n);
        }
        EPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.c_mul(c)))
                .filter(|(_, a)| !a.c_is_zero())
                .collect(),
        }
    }

    /// Multiply by a single term c * mono.
    pub fn mul_term(&self, mono: &EMono, c: &C) -> EPoly<C> {
        if c.c_is_zero() {
            return EPoly::zero(self.n);
        }
        EPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a.c_mul(c)))
                .filter(|(_, a)| !a.c_is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &EPoly<C>) -> EPoly<C> {
        debug_assert_eq!(self.n, other.n);
        let mut acc: BTreeMap<EMono, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.c_mul(cb);
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !c.c_is_zero() {
                            e.insert(c);
                        }
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
        }
        let mut terms: Vec<(EMono, C)> = acc.into_iter().collect();
        terms.reverse();
        EPoly {
            n: self.n,
            terms,
        }
    }

    /// Weighted degree of the (unique) degree of a homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, EPolyError> {
        let mut deg = None;
        for (m, _) in &self.terms {
            match deg {
                None => deg = Some(m.weighted_degree()),
                Some(d) if d != m.weighted_degree() => return Err(EPolyError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn map_coeff<D: Coeff>(&self, f: impl Fn(&C) -> D) -> EPoly<D> {
        EPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.c_is_zero())
                .collect(),
        }
    }

    pub fn monic(&self) -> EPoly<C> {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.c_inv()),
        }
    }
}

impl<C: Coeff> EPoly<C> {
    /// Reinterpret in a ring with more variables (pad exponents with zeros).
    pub fn lift_vars(&self, n_new: usize) -> EPoly<C> {
        assert!(n_new >= self.n && n_new <= MAX_VARS);
        EPoly {
            n: n_new,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exponents();
                    exps.resize(n_new, 0);
                    (EMono::from_exponents(n_new, &exps), c.clone())
                })
                .collect(),
        }
    }

    /// Substitute polynomials for the variables: `images[i]` replaces
    /// e_{i+1}. The images live in a ring with `n_new` variables.
    pub fn substitute(&self, n_new: usize, images: &[EPoly<C>]) -> EPoly<C> {
        assert_eq!(images.len(), self.n);
        let mut out = EPoly::zero(n_new);
        for (m, c) in &self.terms {
            let mut term = EPoly::constant(n_new, c.clone());
            for i in 1..=self.n {
                for _ in 0..m.exponent(i) {
                    term = term.mul(&images[i - 1]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl EPoly<Rational> {
    /// Reduction map into F_p; defined when every coefficient is p-local.
    pub fn reduce_mod(&self, p: Prime) -> Result<EPoly<Fp>, crate::arith::ArithError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let fc = Fp::from_rational(c, p)?;
            if !fc.is_zero() {
                terms.push((*m, fc));
            }
        }
        Ok(EPoly {
            n: self.n,
            terms,
        })
    }
}

fn coeff_is_minus_one<C: Coeff>(c: &C) -> bool {
    c.c_neg().c_is_one()
}

impl<C: Coeff> fmt::Display for EPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let lead = i == 0;
            if m.is_one() {
                // constant term keeps its full coefficient
                let s = format!("{c}");
                if !lead && !s.starts_with('-') {
                    write!(f, "+")?;
                }
                write!(f, "{s}")?;
                continue;
            }
            if c.c_is_one() {
                if !lead {
                    write!(f, "+")?;
                }
            } else if coeff_is_minus_one(c) {
                write!(f, "-")?;
            } else {
                let s = format!("{c}");
                if !lead && !s.starts_with('-') {
                    write!(f, "+")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "{m:?}")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for EPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ideal of k[e_1..e_n] presented by generators.
#[derive(Clone, Debug)]
pub struct EIdeal<C: Coeff> {
    pub n: usize,
    pub gens: Vec<EPoly<C>>,
}

impl<C: Coeff> EIdeal<C> {
    pub fn new(n: usize, gens: Vec<EPoly<C>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        EIdeal { n, gens }
    }
}

/// All monomials of k[e_1..e_n] of weighted degree exactly `d`, in
/// descending ring order.
pub fn emonomials_of_degree(n: usize, d: u32) -> Vec<EMono> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    // choose exponents for e_n down to e_1; e_1 absorbs the remainder
    fn rec(n: usize, var: usize, rem: u32, exps: &mut Vec<u32>, out: &mut Vec<EMono>) {
        if var == 1 {
            exps[0] = rem;
            out.push(EMono::from_exponents(n, exps));
            exps[0] = 0;
            return;
        }
        let w = var as u32;
        for a in 0..=rem / w {
            exps[var - 1] = a;
            rec(n, var - 1, rem - a * w, exps, out);
        }
        exps[var - 1] = 0;
    }
    rec(n, n, d, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[derive(Serialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct IdealJson {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub generators: Vec<Vec<TermJson>>,
}

pub fn poly_terms_json<C: Coeff>(p: &EPoly<C>) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(m, c)| TermJson {
            exps: m.exponents(),
            coeff: format!("{c}"),
        })
        .collect()
}

pub fn ideal_json<C: Coeff>(ideal: &EIdeal<C>, p: Option<u64>) -> IdealJson {
    IdealJson {
        n: ideal.n,
        p,
        generators: ideal.gens.iter().map(poly_terms_json).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;

    fn q(v: i64) -> Rational {
        rational_int(v)
    }

    #[test]
    fn order_is_weighted_then_lex() {
        // e_3 and e_1 e_2 both have weighted degree 3; e_1 e_2 wins on lex.
        let e3 = EMono::var(3, 3);
        let e1e2 = EMono::var(3, 1).mul(&EMono::var(3, 2));
        assert_eq!(e3.weighted_degree(), 3);
        assert_eq!(e1e2.weighted_degree(), 3);
        assert!(e1e2 > e3);
        // weighted degree dominates: e_2 (deg 2) > e_1 (deg 1)
        assert!(EMono::var(3, 2) > EMono::var(3, 1));
    }

    #[test]
    fn arithmetic_round_trip() {
        let n = 3;
        let e1 = EPoly::var(n, 1, q(1));
        let e2 = EPoly::var(n, 2, q(1));
        let prod = e1.mul(&e2);
        assert_eq!(format!("{prod}"), "e1e2");
        let s = prod.sub(&EPoly::var(n, 3, q(1)));
        assert_eq!(format!("{s}"), "e1e2-e3");
        assert_eq!(s.homogeneous_degree().unwrap(), Some(3));
        let sq = s.mul(&s);
        assert_eq!(format!("{sq}"), "e1^2e2^2-2e1e2e3+e3^2");
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn homogeneity_detection() {
        let n = 2;
        let f = EPoly::var(n, 1, q(1)).add(&EPoly::constant(n, q(5)));
        assert_eq!(f.homogeneous_degree(), Err(EPolyError::NotHomogeneous));
        // e_1^2 - 2 e_2 is weighted-homogeneous of degree 2
        let g = EPoly::var(n, 1, q(1))
            .mul(&EPoly::var(n, 1, q(1)))
            .sub(&EPoly::var(n, 2, q(2)));
        assert_eq!(g.homogeneous_degree().unwrap(), Some(2));
    }

    #[test]
    fn reduce_mod_drops_multiples_of_p() {
        let p = Prime::new(2).unwrap();
        let n = 3;
        let f = EPoly::var(n, 1, q(2)).add(&EPoly::var(n, 3, q(3)));
        let r = f.reduce_mod(p).unwrap();
        assert_eq!(format!("{r}"), "e3");
        let bad = EPoly::constant(n, crate::arith::rational_frac(1, 2));
        assert!(bad.reduce_mod(p).is_err());
    }
}
