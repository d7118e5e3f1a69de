//! Exact coefficient arithmetic: arbitrary-precision rationals with p-adic
//! valuation queries, and prime-field elements.
//!
//! Rationals model Z_(p) through the [`is_p_local`] predicate rather than a
//! separate storage type; every value is kept in lowest terms with a positive
//! denominator (the representation `num_rational::BigRational` maintains).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not {p}-local (valuation {val})")]
    NotPLocal { value: String, p: u64, val: i64 },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
}

/// A checked prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= p).unwrap_or(false) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a rational, with `Infinite` reserved for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_nonnegative(self) -> bool {
        match self {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

fn int_valuation(x: &BigInt, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0i64;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// Exponent of `p` in `x`: writes `x = p^v * (a/b)` with `p` dividing
/// neither `a` nor `b`. Zero maps to `Infinite`.
pub fn valuation_p(x: &Rational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let vn = int_valuation(x.numer(), p.get());
    let vd = int_valuation(x.denom(), p.get());
    Valuation::Finite(vn - vd)
}

/// True iff `x` lies in the localization Z_(p), i.e. has no `p` in its
/// denominator.
pub fn is_p_local(x: &Rational, p: Prime) -> bool {
    valuation_p(x, p).is_nonnegative()
}

pub fn rational_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rational_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An element of the prime field F_p. The modulus travels with the value;
/// binary operations panic on mismatched moduli.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Self {
        let m = p.get() as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            p: p.get(),
        }
    }

    pub fn zero(p: Prime) -> Self {
        Fp { value: 0, p: p.get() }
    }

    pub fn one(p: Prime) -> Self {
        Fp::new(1, p)
    }

    pub fn from_bigint(x: &BigInt, p: Prime) -> Self {
        let m = BigInt::from(p.get());
        let r = ((x % &m) + &m) % &m;
        let digits = r.to_u64_digits().1;
        Fp {
            value: digits.first().copied().unwrap_or(0),
            p: p.get(),
        }
    }

    /// Reduction Z_(p) -> F_p; defined exactly on p-local rationals.
    pub fn from_rational(x: &Rational, p: Prime) -> Result<Self, ArithError> {
        match valuation_p(x, p) {
            Valuation::Finite(v) if v < 0 => Err(ArithError::NotPLocal {
                value: x.to_string(),
                p: p.get(),
                val: v,
            }),
            _ => {
                let num = Fp::from_bigint(x.numer(), p);
                let den = Fp::from_bigint(x.denom(), p);
                Ok(num.mul(den.inv().expect("denominator coprime to p")))
            }
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Fp) {
        assert_eq!(self.p, other.p, "mixed moduli {} and {}", self.p, other.p);
    }

    pub fn add(self, other: Fp) -> Fp {
        self.same(other);
        Fp {
            value: (self.value + other.value) % self.p,
            p: self.p,
        }
    }

    pub fn sub(self, other: Fp) -> Fp {
        self.same(other);
        Fp {
            value: (self.value + self.p - other.value) % self.p,
            p: self.p,
        }
    }

    pub fn mul(self, other: Fp) -> Fp {
        self.same(other);
        Fp {
            value: (self.value as u128 * other.value as u128 % self.p as u128) as u64,
            p: self.p,
        }
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }

    pub fn inv(self) -> Result<Fp, ArithError> {
        if self.value == 0 {
            return Err(ArithError::DivisionByZero(self.p));
        }
        // Fermat: a^(p-2) mod p.
        let mut base = self;
        let mut acc = Fp { value: 1, p: self.p };
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Shared scalar interface for polynomial coefficients. Zero never needs a
/// standalone constructor: sparse representations drop zero coefficients, and
/// every operation below receives at least one value carrying its context.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn c_add(&self, other: &Self) -> Self;
    fn c_sub(&self, other: &Self) -> Self;
    fn c_mul(&self, other: &Self) -> Self;
    fn c_neg(&self) -> Self;
    fn c_inv(&self) -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_is_one(&self) -> bool;
    /// Context-preserving integer embedding (same modulus for `Fp`).
    fn c_from_i64(&self, v: i64) -> Self;
}

impl Coeff for Rational {
    fn c_add(&self, other: &Self) -> Self {
        self + other
    }
    fn c_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn c_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_inv(&self) -> Self {
        self.recip()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_is_one(&self) -> bool {
        self.is_one()
    }
    fn c_from_i64(&self, v: i64) -> Self {
        rational_int(v)
    }
}

impl Coeff for Fp {
    fn c_add(&self, other: &Self) -> Self {
        (*self).add(*other)
    }
    fn c_sub(&self, other: &Self) -> Self {
        (*self).sub(*other)
    }
    fn c_mul(&self, other: &Self) -> Self {
        (*self).mul(*other)
    }
    fn c_neg(&self) -> Self {
        (*self).neg()
    }
    fn c_inv(&self) -> Self {
        (*self).inv().expect("inverse of zero")
    }
    fn c_is_zero(&self) -> bool {
        (*self).is_zero()
    }
    fn c_is_one(&self) -> bool {
        self.value == 1 % self.p
    }
    fn c_from_i64(&self, v: i64) -> Self {
        Fp {
            value: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }
}
