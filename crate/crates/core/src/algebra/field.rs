//! Exact coefficient rings.
//!
//! Elements carry what they need to do arithmetic on their own; the
//! associated `Ctx` is only needed to create constants. For the rationals
//! that is `()`, for `F_p` it is the modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("unrecognised field spec {0:?}; expected \"rat\" or \"fp:<p>\"")]
    BadSpec(String),
}

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug {
    type Ctx: Clone + Debug;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A field of characteristic other than 2.
pub trait Field: Ring + Eq + Hash + Display {
    fn inv(&self) -> Option<Self>;
    fn from_i64(ctx: &Self::Ctx, value: i64) -> Self;
    fn is_one(&self) -> bool;
    /// Whether the printed form starts with a minus sign.
    fn is_negative(&self) -> bool;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }
}

/// Arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn from_i64(_: &(), value: i64) -> Self {
        Rational::integer(value)
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// The modulus of a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u32 = 32003;

    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn element(&self, value: i64) -> Fp {
        Fp::from_i64(self, value)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element of `F_p`, stored in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        let v = self.value as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc as u32, p: self.p }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Ring for Fp {
    type Ctx = PrimeField;

    fn zero(ctx: &PrimeField) -> Self {
        Fp { value: 0, p: ctx.p }
    }
    fn one(ctx: &PrimeField) -> Self {
        Fp { value: 1, p: ctx.p }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.value as u64 + other.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.value as u64 + self.p as u64 - other.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.value as u64 * other.value as u64;
        Fp { value: (s % self.p as u64) as u32, p: self.p }
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.p - self.value, p: self.p }
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.p as u64 - 2))
    }
    fn from_i64(ctx: &PrimeField, value: i64) -> Self {
        let v = value.rem_euclid(ctx.p as i64);
        Fp { value: v as u32, p: ctx.p }
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn is_negative(&self) -> bool {
        self.symmetric() < 0
    }
}

/// Which coefficient field to compute over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(PrimeField),
}

impl FieldSpec {
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let s = spec.trim();
        if s == "rat" || s == "q" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| FieldError::BadSpec(spec.to_string()))?;
            return Ok(FieldSpec::Prime(PrimeField::new(p)?));
        }
        Err(FieldError::BadSpec(spec.to_string()))
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rat"),
            FieldSpec::Prime(pf) => write!(f, "fp:{}", pf.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        let a = f.element(3);
        let b = f.element(-2);
        assert_eq!(b.value(), 5);
        assert_eq!(a.add(&b).value(), 1);
        assert_eq!(a.sub(&b).value(), 5);
        assert_eq!(a.mul(&b).value(), 1);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert!(f.element(0).inv().is_none());
        assert_eq!(b.to_string(), "-2");
    }

    #[test]
    fn inverses_mod_default_prime() {
        let f = PrimeField::new(PrimeField::DEFAULT_PRIME as u64).unwrap();
        for k in 1..200 {
            let x = f.element(k);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(PrimeField::new(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(PrimeField::new(9), Err(FieldError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("rat").unwrap(), FieldSpec::Rational);
        assert_eq!(FieldSpec::parse("fp:32003").unwrap().to_string(), "fp:32003");
        assert_eq!(FieldSpec::parse("fp:2"), Err(FieldError::CharacteristicTwo));
        assert!(matches!(FieldSpec::parse("gf"), Err(FieldError::BadSpec(_))));
    }

    #[test]
    fn rationals() {
        let a = Rational::new(1, 2);
        let b = Rational::new(-3, 4);
        assert_eq!(a.add(&b), Rational::new(-1, 4));
        assert_eq!(a.div(&b).unwrap(), Rational::new(-2, 3));
        assert!(b.is_negative());
        assert!(Rational::zero(&()).inv().is_none());
    }
}
