//! Buchberger's algorithm over F_p for ideals of the weighted ring
//! k[e_1..e_n], with reduced bases, normal forms, Krull dimension from
//! leading terms, regular-sequence tests, and Z_(p)-ideal equality via
//! constructive reduction mod p.
//!
//! Pair selection is the normal strategy (smallest lcm degree first) with
//! Buchberger's product and chain criteria; desk-scale inputs need nothing
//! fancier.

use crate::arith::{is_p_local, valuation_p, Coeff, Fp, Prime, Rational};
use crate::epoly::{emonomials_of_degree, EIdeal, EMono, EPoly};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum GroebnerError {
    #[error("unit ideal has no Krull dimension")]
    UnitIdeal,
    #[error("generator {index} is not weighted-homogeneous of positive degree")]
    NotHomogeneous { index: usize },
    #[error("cannot certify that {p} lies in the ideal: no constant generator of valuation <= 1")]
    PNotCertified { p: u64 },
    #[error("generator has non-{p}-local coefficient")]
    NotLocal { p: u64 },
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
}

/// A reduced Groebner basis: auto-reduced, monic, sorted by ascending
/// leading monomial — the canonical form for equality tests.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    n: usize,
    p: Prime,
    elements: Vec<EPoly<Fp>>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn elements(&self) -> &[EPoly<Fp>] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.leading().map(|(m, _)| m.is_one()).unwrap_or(false))
    }

    pub fn contains(&self, f: &EPoly<Fp>) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Count of standard monomials (not divisible by any leading term) of
    /// weighted degree d; this is the Hilbert function of R/I at d.
    pub fn std_monomial_count(&self, d: u32) -> usize {
        let leads: Vec<EMono> = self
            .elements
            .iter()
            .map(|g| g.leading().unwrap().0)
            .collect();
        emonomials_of_degree(self.n, d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count()
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.p == other.p && self.elements == other.elements
    }
}

fn find_reducer<'a>(m: &EMono, basis: &'a [EPoly<Fp>]) -> Option<&'a EPoly<Fp>> {
    basis
        .iter()
        .find(|g| g.leading().map(|(l, _)| l.divides(m)).unwrap_or(false))
}

/// Full reduction: every term of the result is outside the leading-term
/// ideal of the reducers.
pub fn normal_form_against(f: &EPoly<Fp>, reducers: &[EPoly<Fp>]) -> EPoly<Fp> {
    let n = f.nvars();
    let mut rest = f.clone();
    let mut out = EPoly::zero(n);
    while let Some((m, c)) = rest.leading().cloned() {
        match find_reducer(&m, reducers) {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = m.div(lm).unwrap();
                let factor = c.c_mul(&lc.c_inv());
                rest = rest.sub(&g.mul_term(&q, &factor));
            }
            None => {
                out = out.add(&EPoly::from_terms(n, vec![(m, c)]));
                rest = rest.sub(&EPoly::from_terms(n, vec![(m, c)]));
            }
        }
    }
    out
}

pub fn normal_form(f: &EPoly<Fp>, basis: &GroebnerBasis) -> EPoly<Fp> {
    normal_form_against(f, &basis.elements)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: EMono,
}

/// Reduced Groebner basis of the ideal, deterministic for a fixed input
/// module the reduced-basis uniqueness theorem.
pub fn buchberger(ideal: &EIdeal<Fp>, p: Prime) -> GroebnerBasis {
    let n = ideal.n;
    let mut basis: Vec<EPoly<Fp>> = Vec::new();
    for g in &ideal.gens {
        let nf = normal_form_against(g, &basis);
        if !nf.is_zero() {
            basis.push(nf.monic());
        }
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push(make_pair(&basis, i, j));
        }
    }

    while !pairs.is_empty() {
        // normal selection: minimal lcm degree first, ties by lcm order
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .weighted_degree()
                    .cmp(&b.lcm.weighted_degree())
                    .then_with(|| a.lcm.cmp(&b.lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        done.insert((pair.i, pair.j));

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (li, _) = fi.leading().unwrap();
        let (lj, _) = fj.leading().unwrap();

        // product criterion
        if li.coprime(lj) {
            continue;
        }
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading().unwrap().0.divides(&pair.lcm)
                && done.contains(&key(pair.i, k))
                && done.contains(&key(pair.j, k))
        });
        if chained {
            continue;
        }

        let qi = pair.lcm.div(li).unwrap();
        let qj = pair.lcm.div(lj).unwrap();
        let one = Fp::one(p);
        let s = fi.mul_term(&qi, &one).sub(&fj.mul_term(&qj, &one));
        let nf = normal_form_against(&s, &basis);
        if !nf.is_zero() {
            let new_idx = basis.len();
            basis.push(nf.monic());
            for i in 0..new_idx {
                pairs.push(make_pair(&basis, i, new_idx));
            }
        }
    }

    // minimalize: drop elements whose leading term another one divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] {
                let li = basis[i].leading().unwrap().0;
                let lj = basis[j].leading().unwrap().0;
                if lj.divides(&li) && (li != lj || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<EPoly<Fp>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // tail-reduce each against the others
    let mut reduced: Vec<EPoly<Fp>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<EPoly<Fp>> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        reduced.push(normal_form_against(&minimal[i], &others).monic());
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(&b.leading().unwrap().0));

    GroebnerBasis {
        n,
        p,
        elements: reduced,
    }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn make_pair(basis: &[EPoly<Fp>], i: usize, j: usize) -> Pair {
    let li = basis[i].leading().unwrap().0;
    let lj = basis[j].leading().unwrap().0;
    Pair {
        i,
        j,
        lcm: li.lcm(&lj),
    }
}

/// Krull dimension of R/I from the leading-term ideal: the largest subset S
/// of the variables meeting no leading monomial's support.
pub fn krull_dimension(basis: &GroebnerBasis) -> Result<usize, GroebnerError> {
    if basis.is_unit_ideal() {
        return Err(GroebnerError::UnitIdeal);
    }
    let n = basis.n;
    let leads: Vec<Vec<usize>> = basis
        .elements
        .iter()
        .map(|g| {
            let m = g.leading().unwrap().0;
            (1..=n).filter(|&i| m.exponent(i) > 0).collect()
        })
        .collect();
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = leads
            .iter()
            .all(|support| support.iter().any(|&i| mask & (1 << (i - 1)) == 0));
        if independent {
            best = size;
        }
    }
    Ok(best)
}

/// Homogeneous elements over a field form a regular sequence iff the Krull
/// dimension drops by exactly one at every prefix.
pub fn is_regular_sequence(
    n: usize,
    p: Prime,
    gens: &[EPoly<Fp>],
) -> Result<bool, GroebnerError> {
    for (index, g) in gens.iter().enumerate() {
        match g.homogeneous_degree() {
            Ok(Some(d)) if d > 0 => {}
            _ => return Err(GroebnerError::NotHomogeneous { index }),
        }
    }
    for k in 1..=gens.len() {
        let basis = buchberger(&EIdeal::new(n, gens[..k].to_vec()), p);
        if basis.is_unit_ideal() {
            return Ok(false);
        }
        if krull_dimension(&basis)? != n - k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witness that p lies in an ideal over Z_(p): a constant generator c with
/// v_p(c) <= 1, so that (p/c) * c = p with a p-local cofactor.
#[derive(Debug, Clone)]
pub struct PContainment {
    pub generator_index: usize,
    pub cofactor: Rational,
}

pub fn certify_p_in_ideal(
    ideal: &EIdeal<Rational>,
    p: Prime,
) -> Result<PContainment, GroebnerError> {
    for (idx, g) in ideal.gens.iter().enumerate() {
        if g.num_terms() == 1 {
            let (m, c) = &g.terms()[0];
            if m.is_one() {
                let cofactor = crate::arith::rational_int(p.get() as i64) / c;
                if is_p_local(&cofactor, p) {
                    debug_assert!(valuation_p(c, p).finite().unwrap_or(0) <= 1);
                    return Ok(PContainment {
                        generator_index: idx,
                        cofactor,
                    });
                }
            }
        }
    }
    Err(GroebnerError::PNotCertified { p: p.get() })
}

pub fn reduce_ideal_mod(
    ideal: &EIdeal<Rational>,
    p: Prime,
) -> Result<EIdeal<Fp>, GroebnerError> {
    let mut gens = Vec::new();
    for g in &ideal.gens {
        let r = g.reduce_mod(p).map_err(|_| GroebnerError::NotLocal { p: p.get() })?;
        if !r.is_zero() {
            gens.push(r);
        }
    }
    Ok(EIdeal::new(ideal.n, gens))
}

/// Equality of two Z_(p)-ideals that both contain p, decided on the mod-p
/// images. Containment of p is certified constructively first; with p in
/// both, each ideal is the full preimage of its image, so equality of
/// reduced Groebner bases decides equality over Z_(p).
pub fn ideals_equal_mod_p(
    a: &EIdeal<Rational>,
    b: &EIdeal<Rational>,
    p: Prime,
) -> Result<bool, GroebnerError> {
    certify_p_in_ideal(a, p)?;
    certify_p_in_ideal(b, p)?;
    let ga = buchberger(&reduce_ideal_mod(a, p)?, p);
    let gb = buchberger(&reduce_ideal_mod(b, p)?, p);
    Ok(ga == gb)
}

pub fn ideals_equal_fp(a: &EIdeal<Fp>, b: &EIdeal<Fp>, p: Prime) -> bool {
    buchberger(a, p) == buchberger(b, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_int;

    fn fp(v: i64, p: Prime) -> Fp {
        Fp::new(v, p)
    }

    fn evar(n: usize, i: usize, p: Prime) -> EPoly<Fp> {
        EPoly::var(n, i, Fp::one(p))
    }

    #[test]
    fn monomial_generators_are_their_own_basis() {
        let p = Prime::new(5).unwrap();
        let n = 3;
        let ideal = EIdeal::new(n, vec![evar(n, 1, p), evar(n, 2, p)]);
        let basis = buchberger(&ideal, p);
        assert_eq!(basis.elements().len(), 2);
        assert_eq!(format!("{}", basis.elements()[0]), "e1");
        assert_eq!(format!("{}", basis.elements()[1]), "e2");
    }

    #[test]
    fn principal_ideal_basis() {
        let p = Prime::new(2).unwrap();
        let n = 3;
        let g = evar(n, 1, p).mul(&evar(n, 2, p)).add(&evar(n, 3, p));
        let basis = buchberger(&EIdeal::new(n, vec![g.clone()]), p);
        assert_eq!(basis.elements(), &[g]);
    }

    #[test]
    fn membership_in_jtilde4() {
        // p = 3: Jtilde_4 = <e1 e3 - e4, e2>; e2 e3 is a multiple of e2
        let p = Prime::new(3).unwrap();
        let n = 4;
        let g1 = evar(n, 1, p).mul(&evar(n, 3, p)).sub(&evar(n, 4, p));
        let g2 = evar(n, 2, p);
        let basis = buchberger(&EIdeal::new(n, vec![g1.clone(), g2]), p);
        let f = evar(n, 2, p).mul(&evar(n, 3, p));
        assert!(basis.contains(&f));
        assert!(normal_form(&g1, &basis).is_zero());
        let one = EPoly::constant(n, Fp::one(p));
        assert_eq!(normal_form(&one, &basis), one);
    }

    #[test]
    fn char_two_sign_collapse() {
        let p = Prime::new(2).unwrap();
        let n = 3;
        let minus = evar(n, 1, p).mul(&evar(n, 2, p)).sub(&evar(n, 3, p));
        let plus = evar(n, 1, p).mul(&evar(n, 2, p)).add(&evar(n, 3, p));
        let basis = buchberger(&EIdeal::new(n, vec![minus]), p);
        assert!(normal_form(&plus, &basis).is_zero());
    }

    #[test]
    fn krull_dimension_examples() {
        let p = Prime::new(3).unwrap();
        let n = 3;
        // <e1, e2> in n = p = 3 variables: dimension 1
        let basis = buchberger(&EIdeal::new(n, vec![evar(n, 1, p), evar(n, 2, p)]), p);
        assert_eq!(krull_dimension(&basis).unwrap(), 1);
        // zero ideal
        let basis = buchberger(&EIdeal::new(n, vec![]), p);
        assert_eq!(krull_dimension(&basis).unwrap(), 3);
        // Jtilde_7 at p = 5: dimension 3 (height 4)
        let p = Prime::new(5).unwrap();
        let n = 7;
        let gens = vec![
            evar(n, 1, p).mul(&evar(n, 5, p)).sub(&evar(n, 6, p)),
            evar(n, 2, p).mul(&evar(n, 5, p)).sub(&evar(n, 7, p)),
            evar(n, 3, p),
            evar(n, 4, p),
        ];
        let basis = buchberger(&EIdeal::new(n, gens), p);
        assert_eq!(krull_dimension(&basis).unwrap(), 3);
        // unit ideal rejected
        let one = EPoly::constant(3, Fp::one(Prime::new(3).unwrap()));
        let basis = buchberger(&EIdeal::new(3, vec![one]), Prime::new(3).unwrap());
        assert!(matches!(krull_dimension(&basis), Err(GroebnerError::UnitIdeal)));
    }

    #[test]
    fn regular_sequence_examples() {
        let p = Prime::new(7).unwrap();
        let n = 3;
        let gens = vec![evar(n, 1, p), evar(n, 2, p), evar(n, 3, p)];
        assert!(is_regular_sequence(n, p, &gens).unwrap());
        let gens = vec![evar(n, 1, p), evar(n, 1, p).mul(&evar(n, 1, p))];
        assert!(!is_regular_sequence(n, p, &gens).unwrap());
        let inhom = evar(n, 1, p).add(&EPoly::constant(n, Fp::one(p)));
        assert!(is_regular_sequence(n, p, &[inhom]).is_err());
    }

    #[test]
    fn reduction_is_confluent() {
        let p = Prime::new(3).unwrap();
        let n = 4;
        let gens = vec![
            evar(n, 1, p).mul(&evar(n, 3, p)).sub(&evar(n, 4, p)),
            evar(n, 2, p),
        ];
        let basis = buchberger(&EIdeal::new(n, gens), p);
        let f = evar(n, 1, p).mul(&evar(n, 1, p)).mul(&evar(n, 3, p));
        let g = evar(n, 4, p).mul(&evar(n, 2, p)).add(&evar(n, 1, p).mul(&evar(n, 4, p)));
        let lhs = normal_form(&f.add(&g), &basis);
        let rhs = normal_form(&normal_form(&f, &basis).add(&g), &basis);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_inputs_reduce_homogeneously() {
        let p = Prime::new(5).unwrap();
        let n = 5;
        let gens = vec![
            evar(n, 1, p).mul(&evar(n, 5, p)).sub(&evar(n, 5, p).mul(&evar(n, 1, p)).add(&evar(n, 2, p).mul(&evar(n, 4, p)))),
            evar(n, 2, p).mul(&evar(n, 3, p)).sub(&evar(n, 5, p)),
            evar(n, 3, p),
        ];
        let basis = buchberger(&EIdeal::new(n, gens), p);
        for g in basis.elements() {
            assert!(g.homogeneous_degree().is_ok());
        }
        let f = evar(n, 1, p).mul(&evar(n, 2, p)).mul(&evar(n, 3, p));
        let nf = normal_form(&f, &basis);
        if let Ok(Some(d)) = nf.homogeneous_degree() {
            assert_eq!(d, 6);
        }
    }

    #[test]
    fn p_containment_certificates() {
        let n = 3;
        let q = rational_int;
        let p2 = Prime::new(2).unwrap();
        let a = EIdeal::new(n, vec![EPoly::constant(n, q(6)), EPoly::var(n, 1, q(1))]);
        let cert = certify_p_in_ideal(&a, p2).unwrap();
        assert_eq!(cert.generator_index, 0);
        assert_eq!(cert.cofactor, crate::arith::rational_frac(1, 3));
        let b = EIdeal::new(n, vec![EPoly::var(n, 1, q(1))]);
        assert!(certify_p_in_ideal(&b, p2).is_err());
        // 4 = p^2 cannot certify p
        let c = EIdeal::new(n, vec![EPoly::constant(n, q(4))]);
        assert!(certify_p_in_ideal(&c, p2).is_err());
    }

    #[test]
    fn ideal_equality_mod_p() {
        let n = 3;
        let q = rational_int;
        let p2 = Prime::new(2).unwrap();
        // <2, e1 e2 - e3> vs <2, e1 e2 + e3>: equal mod 2
        let m = EPoly::var(n, 1, q(1)).mul(&EPoly::var(n, 2, q(1)));
        let a = EIdeal::new(
            n,
            vec![EPoly::constant(n, q(2)), m.sub(&EPoly::var(n, 3, q(1)))],
        );
        let b = EIdeal::new(
            n,
            vec![EPoly::constant(n, q(2)), m.add(&EPoly::var(n, 3, q(1)))],
        );
        assert!(ideals_equal_mod_p(&a, &b, p2).unwrap());
        let c = EIdeal::new(n, vec![EPoly::constant(n, q(2)), EPoly::var(n, 1, q(1))]);
        assert!(!ideals_equal_mod_p(&a, &c, p2).unwrap());
    }

    #[test]
    fn std_monomial_count_matches_partition_complement() {
        // R/<e1> at n = 2: standard monomials are powers of e2
        let p = Prime::new(3).unwrap();
        let basis = buchberger(&EIdeal::new(2, vec![evar(2, 1, p)]), p);
        assert_eq!(basis.std_monomial_count(0), 1);
        assert_eq!(basis.std_monomial_count(1), 0);
        assert_eq!(basis.std_monomial_count(2), 1);
        assert_eq!(basis.std_monomial_count(4), 1);
        assert_eq!(basis.std_monomial_count(5), 0);
    }
}
