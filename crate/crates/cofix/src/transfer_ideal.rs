//! The transfer-ideal pipeline: generators from special partitions, the
//! candidate ideals J_n and Jtilde_n for p <= n < 2p, coefficient
//! certificates for the containment J_n in the transfer image, and the
//! machine checks of the ideal equalities behind the main theorem, its F_p
//! corollary, and the change-of-rings construction.

use crate::arith::{is_p_local, valuation_p, Coeff, Fp, Prime, Rational};
use crate::combin::{binomial, factorial, special_partitions, Partition};
use crate::epoly::{EIdeal, EMono, EPoly};
use crate::groebner::{
    buchberger, certify_p_in_ideal, ideals_equal_fp, krull_dimension, reduce_ideal_mod,
    GroebnerError,
};
use crate::polyx::{
    expand_m_basis, to_elementary, transfer_monomial_fp, transfer_monomial_q, ElemExpander, XPoly,
};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum TransferError {
    #[error("n = {n} out of range for p = {p}: need {lo} <= n <= {hi}")]
    RangeViolation { p: u64, n: usize, lo: usize, hi: usize },
    #[error("certificate for generator {target}: coefficient at (j={j}, k={k}, lambda={lambda}) has negative {p}-adic valuation")]
    NotPLocal {
        target: String,
        j: usize,
        k: usize,
        lambda: String,
        p: u64,
    },
    #[error("m-expansion mismatch for generator {target} at (j={j}, k={k}, lambda={lambda}): brute force {brute}, closed form {formula}")]
    CoefficientMismatch {
        target: String,
        j: usize,
        k: usize,
        lambda: String,
        brute: String,
        formula: String,
    },
    #[error("certificate sum does not reproduce target {target}")]
    CertificateBroken { target: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Polyx(#[from] crate::polyx::PolyxError),
}

fn check_range(p: Prime, n: usize, lo: usize, hi: usize) -> Result<(), TransferError> {
    if n < lo || n > hi {
        return Err(TransferError::RangeViolation {
            p: p.get(),
            n,
            lo,
            hi,
        });
    }
    Ok(())
}

/// Generators of the transfer image over Z_(p): one per special partition,
/// each the e-basis form of Tr(x^lambda) = a_lambda m_lambda. These have
/// integer coefficients, so p-locality is automatic.
pub struct TransferGenerators {
    pub n: usize,
    pub by_partition: Vec<(Partition, EPoly<Rational>)>,
}

impl TransferGenerators {
    pub fn ideal(&self) -> EIdeal<Rational> {
        EIdeal::new(self.n, self.by_partition.iter().map(|(_, g)| g.clone()).collect())
    }
}

pub fn transfer_ideal_generators(n: usize, _p: Prime) -> TransferGenerators {
    let mut expander = ElemExpander::new(n, Rational::one());
    let mut by_partition = Vec::new();
    for lambda in special_partitions(n) {
        let t = transfer_monomial_q(&lambda);
        let g = to_elementary(&t, &mut expander);
        if !g.is_zero() {
            by_partition.push((lambda, g));
        }
    }
    TransferGenerators { n, by_partition }
}

fn e(n: usize, i: usize) -> EPoly<Rational> {
    EPoly::var(n, i, Rational::one())
}

/// The candidate ideal J_n = <p, e_1 e_p - e_{p+1}, ..., e_i e_p - e_{p+i},
/// e_{i+1}, ..., e_{p-1}> of Z_(p)[e_1..e_n], with i = n - p. Generator
/// order matches the printed displays: p first, then the mixed generators
/// ascending, then the plain ones ascending.
pub fn candidate_jn(n: usize, p: Prime) -> Result<EIdeal<Rational>, TransferError> {
    let pu = p.get() as usize;
    check_range(p, n, pu, 2 * pu - 1)?;
    let i = n - pu;
    let mut gens = vec![EPoly::constant(n, crate::arith::rational_int(p.get() as i64))];
    for j in 1..=i {
        gens.push(e(n, j).mul(&e(n, pu)).sub(&e(n, pu + j)));
    }
    for j in i + 1..pu {
        gens.push(e(n, j));
    }
    Ok(EIdeal::new(n, gens))
}

/// Mod-p image of J_n with the generator p dropped: p - 1 generators over
/// F_p.
pub fn candidate_jtilde(n: usize, p: Prime) -> Result<EIdeal<Fp>, TransferError> {
    let jn = candidate_jn(n, p)?;
    let gens = jn
        .gens
        .iter()
        .skip(1)
        .map(|g| g.reduce_mod(p).expect("integer coefficients"))
        .collect();
    Ok(EIdeal::new(n, gens))
}

/// One generator's membership certificate: `target` equals the sum of
/// `coefficient * Tr(x^lambda)` over the combination, with every
/// coefficient p-local.
#[derive(Clone, Serialize)]
pub struct TransferCertificate {
    pub target: String,
    #[serde(skip)]
    pub target_poly: EPoly<Rational>,
    pub combination: Vec<CertificateTerm>,
}

#[derive(Clone, Serialize)]
pub struct CertificateTerm {
    pub coefficient: String,
    #[serde(skip)]
    pub coefficient_value: Rational,
    pub partition: Partition,
    pub valuation: i64,
}

impl TransferCertificate {
    fn new(target: EPoly<Rational>, combination: Vec<(Rational, Partition)>) -> Self {
        TransferCertificate {
            target: format!("{target}"),
            target_poly: target,
            combination: combination
                .into_iter()
                .map(|(c, lambda)| CertificateTerm {
                    coefficient: format!("{c}"),
                    valuation: 0,
                    coefficient_value: c,
                    partition: lambda,
                })
                .collect(),
        }
    }

    /// Recompute the combination in exact rational arithmetic and compare
    /// with the stored target; also re-derive each valuation.
    pub fn validate(&mut self, p: Prime, expander: &mut ElemExpander<Rational>) -> Result<(), TransferError> {
        let n = self.target_poly.nvars();
        let mut sum = EPoly::zero(n);
        for term in &mut self.combination {
            let v = valuation_p(&term.coefficient_value, p);
            if !v.is_nonnegative() {
                return Err(TransferError::NotPLocal {
                    target: self.target.clone(),
                    j: 0,
                    k: 0,
                    lambda: term.partition.to_string(),
                    p: p.get(),
                });
            }
            term.valuation = v.finite().unwrap_or(i64::MAX);
            let tr = to_elementary(&transfer_monomial_q(&term.partition), expander);
            sum = sum.add(&tr.scale(&term.coefficient_value));
        }
        if sum != self.target_poly {
            return Err(TransferError::CertificateBroken {
                target: self.target.clone(),
            });
        }
        Ok(())
    }
}

/// Brute-force m-basis expansion of e_j e_p - e_{p+j} through x-variable
/// products; independent of the m-basis product rule.
fn brute_mixed_generator_m_expansion(
    n: usize,
    j: usize,
    pu: usize,
) -> Result<Vec<(Partition, Rational)>, TransferError> {
    let one = Rational::one();
    let f: XPoly<Rational> = XPoly::elementary(n, j, &one)
        .mul(&XPoly::elementary(n, pu, &one))
        .sub(&XPoly::elementary(n, pu + j, &one));
    let m = expand_m_basis(&f)?;
    Ok(m.coeffs().map(|(l, c)| (l.clone(), c.clone())).collect())
}

fn big_to_rational(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

/// Certificates for every generator of J_n, with the closed-form
/// coefficients checked against brute-force expansion and p-locality
/// verified term by term.
pub fn verify_prop42(p: Prime, n: usize) -> Result<Vec<TransferCertificate>, TransferError> {
    let pu = p.get() as usize;
    check_range(p, n, pu, 2 * pu - 1)?;
    let i = n - pu;
    let mut expander = ElemExpander::new(n, Rational::one());
    let mut certs = Vec::new();

    // generator p: (p / n!) Tr(1)
    let coeff = big_to_rational(BigInt::from(p.get())) / big_to_rational(factorial(n as u64));
    if !is_p_local(&coeff, p) {
        return Err(TransferError::NotPLocal {
            target: p.to_string(),
            j: 0,
            k: 0,
            lambda: Partition::zero(n).to_string(),
            p: p.get(),
        });
    }
    certs.push(TransferCertificate::new(
        EPoly::constant(n, crate::arith::rational_int(p.get() as i64)),
        vec![(coeff, Partition::zero(n))],
    ));

    // plain generators e_j, i+1 <= j <= p-1: coefficient 1/(j! (n-j)!)
    for j in i + 1..pu {
        let mut parts = vec![0u32; n];
        for part in parts.iter_mut().take(j) {
            *part = 1;
        }
        let lambda = Partition::new(parts);
        let coeff = Rational::one()
            / big_to_rational(factorial(j as u64) * factorial((n - j) as u64));
        certs.push(TransferCertificate::new(e(n, j), vec![(coeff, lambda)]));
    }

    // mixed generators e_j e_p - e_{p+j}, 1 <= j <= i
    for j in 1..=i {
        let target = e(n, j).mul(&e(n, pu)).sub(&e(n, pu + j));
        let brute = brute_mixed_generator_m_expansion(n, j, pu)?;
        let mut combination = Vec::new();
        for k in 0..=j {
            let lambda = lambda_family(n, pu, i, j, k);
            let b_formula = if k == 0 {
                binomial((pu + j) as u64, j as u64) - BigInt::one()
            } else {
                binomial((pu + j - 2 * k) as u64, (j - k) as u64)
            };
            let b_brute = brute
                .iter()
                .find(|(l, _)| *l == lambda)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| crate::arith::rational_int(0));
            if b_brute != big_to_rational(b_formula.clone()) {
                return Err(TransferError::CoefficientMismatch {
                    target: format!("{target}"),
                    j,
                    k,
                    lambda: lambda.to_string(),
                    brute: format!("{b_brute}"),
                    formula: b_formula.to_string(),
                });
            }
            let a = big_to_rational(BigInt::from(lambda.stabilizer_order()));
            let coeff = big_to_rational(b_formula) / a;
            // cross-check the simplified closed form for k >= 1
            if k >= 1 {
                let closed = Rational::one()
                    / big_to_rational(
                        factorial((j - k) as u64)
                            * factorial((pu - k) as u64)
                            * factorial(k as u64)
                            * factorial((i - j + k) as u64),
                    );
                if coeff != closed {
                    return Err(TransferError::CoefficientMismatch {
                        target: format!("{target}"),
                        j,
                        k,
                        lambda: lambda.to_string(),
                        brute: format!("{coeff}"),
                        formula: format!("{closed}"),
                    });
                }
            }
            if !is_p_local(&coeff, p) {
                return Err(TransferError::NotPLocal {
                    target: format!("{target}"),
                    j,
                    k,
                    lambda: lambda.to_string(),
                    p: p.get(),
                });
            }
            combination.push((coeff, lambda));
        }
        // the brute-force support must be exactly the lambda family
        if brute.len() != combination.len() {
            return Err(TransferError::CoefficientMismatch {
                target: format!("{target}"),
                j,
                k: usize::MAX,
                lambda: "support".into(),
                brute: format!("{} partitions", brute.len()),
                formula: format!("{} partitions", combination.len()),
            });
        }
        certs.push(TransferCertificate::new(target, combination));
    }

    for cert in &mut certs {
        cert.validate(p, &mut expander)?;
    }
    Ok(certs)
}

/// lambda^(k) = (2^k, 1^{p+j-2k}, 0^{i-j+k}), padded to length n = p + i.
fn lambda_family(n: usize, pu: usize, i: usize, j: usize, k: usize) -> Partition {
    let mut parts = Vec::with_capacity(n);
    parts.extend(std::iter::repeat(2u32).take(k));
    parts.extend(std::iter::repeat(1u32).take(pu + j - 2 * k));
    parts.extend(std::iter::repeat(0u32).take(i - j + k));
    debug_assert_eq!(parts.len(), n);
    Partition::new(parts)
}

#[derive(Serialize)]
pub struct MainTheoremReport {
    pub p: u64,
    pub n: usize,
    pub verified: bool,
    pub p_in_transfer_image: bool,
    pub p_in_candidate: bool,
    pub ideals_equal_mod_p: bool,
    pub regular_sequence: bool,
    pub generator_degrees: Vec<u32>,
    pub degrees_mod_p: Vec<u64>,
    pub special_partition_count: usize,
    pub elapsed_ms: u128,
}

/// The computational content of the main theorem at (p, n): the transfer
/// ideal equals J_n over Z_(p), decided mod p after certifying that p lies
/// in both sides, plus the regular-sequence and degree bookkeeping.
pub fn verify_main_theorem(p: Prime, n: usize) -> Result<MainTheoremReport, TransferError> {
    let start = Instant::now();
    let pu = p.get() as usize;
    check_range(p, n, pu, 2 * pu - 1)?;
    let transfer = transfer_ideal_generators(n, p);
    let transfer_ideal = transfer.ideal();
    let jn = candidate_jn(n, p)?;

    let p_in_transfer = certify_p_in_ideal(&transfer_ideal, p).is_ok();
    let p_in_candidate = certify_p_in_ideal(&jn, p).is_ok();

    let equal = if p_in_transfer && p_in_candidate {
        crate::groebner::ideals_equal_mod_p(&transfer_ideal, &jn, p)?
    } else {
        false
    };

    let jtilde = candidate_jtilde(n, p)?;
    let regular = crate::groebner::is_regular_sequence(n, p, &jtilde.gens)?;

    let generator_degrees: Vec<u32> = jn
        .gens
        .iter()
        .map(|g| g.homogeneous_degree().unwrap().unwrap_or(0))
        .collect();
    let mut degrees_mod_p: Vec<u64> = generator_degrees
        .iter()
        .map(|&d| u64::from(d) % p.get())
        .collect();
    degrees_mod_p.sort_unstable();
    let expected: Vec<u64> = (0..p.get()).collect();

    let verified = p_in_transfer && p_in_candidate && equal && regular && degrees_mod_p == expected;
    Ok(MainTheoremReport {
        p: p.get(),
        n,
        verified,
        p_in_transfer_image: p_in_transfer,
        p_in_candidate,
        ideals_equal_mod_p: equal,
        regular_sequence: regular,
        generator_degrees,
        degrees_mod_p,
        special_partition_count: transfer.by_partition.len(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[derive(Serialize)]
pub struct FpImageReport {
    pub p: u64,
    pub n: usize,
    pub verified: bool,
    pub ideals_equal: bool,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub surviving_generators: usize,
    pub dropped_generators: usize,
    pub elapsed_ms: u128,
}

/// Image of the transfer map with F_p coefficients: transfers of special
/// partitions computed directly over F_p (those with a_lambda divisible by
/// p vanish and are skipped), compared with Jtilde_n via reduced bases.
pub fn verify_fp_transfer_image(p: Prime, n: usize) -> Result<FpImageReport, TransferError> {
    let start = Instant::now();
    let pu = p.get() as usize;
    check_range(p, n, pu, 2 * pu - 1)?;
    let mut expander = ElemExpander::new(n, Fp::one(p));
    let mut gens = Vec::new();
    let mut dropped = 0usize;
    for lambda in special_partitions(n) {
        let t = transfer_monomial_fp(&lambda, p);
        if t.is_zero() {
            dropped += 1;
            continue;
        }
        gens.push(to_elementary(&t, &mut expander));
    }
    let image = EIdeal::new(n, gens);
    let jtilde = candidate_jtilde(n, p)?;
    let equal = ideals_equal_fp(&image, &jtilde, p);
    let basis = buchberger(&image, p);
    let dimension = krull_dimension(&basis)?;
    let expected_dimension = n - pu + 1;
    Ok(FpImageReport {
        p: p.get(),
        n,
        verified: equal && dimension == expected_dimension,
        ideals_equal: equal,
        dimension,
        expected_dimension,
        surviving_generators: image.gens.len(),
        dropped_generators: dropped,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[derive(Serialize)]
pub struct ChangeOfRingsReport {
    pub p: u64,
    pub n: usize,
    pub verified: bool,
    pub grading_preserved: bool,
    pub ideals_equal: bool,
    pub substituted: Vec<String>,
    pub elapsed_ms: u128,
}

/// The change-of-rings substitution f(e_j) = e_j for j < n and f(e_n) =
/// e_{n-p} e_p - e_{n-p}, applied to the generators of Jtilde_n; the image
/// ideal must equal Jtilde_{n-1}, and the substitution must preserve the
/// Z/pZ-grading deg(e_i) = i mod p.
pub fn change_of_rings_check(p: Prime, n: usize) -> Result<ChangeOfRingsReport, TransferError> {
    let start = Instant::now();
    let pu = p.get() as usize;
    check_range(p, n, pu + 1, 2 * pu - 1)?;
    let m = n - 1;
    let one = Fp::one(p);

    // images of e_1..e_n inside F_p[e_1..e_{n-1}]
    let mut images: Vec<EPoly<Fp>> = (1..n).map(|i| EPoly::var(m, i, one)).collect();
    let substitute_en = EPoly::var(m, n - pu, one)
        .mul(&EPoly::var(m, pu, one))
        .sub(&EPoly::var(m, n - pu, one));
    images.push(substitute_en);

    // grading: every image must be Z/p-homogeneous of class i mod p
    let mut grading_ok = true;
    for (i, img) in images.iter().enumerate() {
        let class = ((i + 1) % pu) as u32;
        for (mono, _) in img.terms() {
            if mono.weighted_degree() % pu as u32 != class {
                grading_ok = false;
            }
        }
    }

    let jtilde_n = candidate_jtilde(n, p)?;
    let mapped: Vec<EPoly<Fp>> = jtilde_n
        .gens
        .iter()
        .map(|g| g.substitute(m, &images))
        .collect();
    let rendered = mapped.iter().map(|g| format!("{g}")).collect();
    let image_ideal = EIdeal::new(m, mapped);
    let jtilde_m = candidate_jtilde(m, p)?;
    let equal = ideals_equal_fp(&image_ideal, &jtilde_m, p);

    Ok(ChangeOfRingsReport {
        p: p.get(),
        n,
        verified: grading_ok && equal,
        grading_preserved: grading_ok,
        ideals_equal: equal,
        substituted: rendered,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
