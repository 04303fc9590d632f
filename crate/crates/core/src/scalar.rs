//! Exact field arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Two layers live here. [`Field`] is the static interface used by every hot
//! loop (elements are plain values, the field carries the modulus). [`Scalar`]
//! is a self-describing element that checks field compatibility on every
//! operation; it is what the text and report layers hand around.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default modulus for large certificates.
pub const DEFAULT_PRIME: u64 = 65537;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("cannot parse field spec {0:?} (expected `qq` or `fp:PRIME`)")]
    BadFieldSpec(String),
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.modulus()))
    }

    /// Characteristic of the field; zero for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "qq"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| ScalarError::BadFieldSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = ScalarError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Static field interface. Elements are bare values; the field value knows
/// how to combine them.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A random element: uniform over the field for prime fields, uniform
    /// integers in `[-10, 10]` over the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// `acc[j] -= c * v` for every `(j, v)` in `row`.
    fn sub_scaled(&self, acc: &mut [Self::Elem], c: &Self::Elem, row: &[(u32, Self::Elem)]) {
        for (j, v) in row {
            let slot = &mut acc[*j as usize];
            *slot = self.sub(slot, &self.mul(c, v));
        }
    }
}

/// The prime field `Z/p` with `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 32 {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, ScalarError> {
        let q = Rationals.parse(s)?;
        let den = self.from_bigint(q.denom());
        let inv = self.inv(&den).ok_or(ScalarError::DivisionByZero)?;
        Ok(self.mul(&self.from_bigint(q.numer()), &inv))
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Modular {
            value: *a,
            modulus: self.p,
        }
    }

    fn sub_scaled(&self, acc: &mut [u64], c: &u64, row: &[(u32, u64)]) {
        // c * v < 2^64 since both are below p < 2^32.
        let negc = self.p - c;
        for (j, v) in row {
            let slot = &mut acc[*j as usize];
            *slot = (*slot + negc * v) % self.p;
        }
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-10..=10))
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational, ScalarError> {
        let bad = || ScalarError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(BigRational::new(num, den))
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }

    fn sub_scaled(&self, acc: &mut [BigRational], c: &BigRational, row: &[(u32, BigRational)]) {
        for (j, v) in row {
            let slot = &mut acc[*j as usize];
            *slot -= c * v;
        }
    }
}

/// A self-describing exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator.
    Rational(BigRational),
    /// Always reduced into `[0, modulus)`.
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn modular(value: i64, modulus: u64) -> Result<Self, ScalarError> {
        let f = PrimeField::new(modulus)?;
        Ok(Scalar::Modular {
            value: f.from_i64(value),
            modulus,
        })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        m: impl Fn(PrimeField, u64, u64) -> u64,
    ) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(q(a, b))),
            (
                Scalar::Modular { value: a, modulus: p },
                Scalar::Modular { value: b, modulus: p2 },
            ) if p == p2 => Ok(Scalar::Modular {
                value: m(PrimeField { p: *p }, *a, *b),
                modulus: *p,
            }),
            _ => Err(ScalarError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(&a, &b))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(other, |a, b| a - b, |f, a, b| f.sub(&a, &b))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(&a, &b))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.field() != self.field() {
            return Err(ScalarError::FieldMismatch(self.field(), other.field()));
        }
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.binary(other, |a, b| a / b, |f, a, b| f.mul(&a, &f.inv(&b).unwrap()))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: PrimeField { p: *modulus }.neg(value),
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Modular { value, modulus } => PrimeField { p: *modulus }
                .inv(value)
                .map(|value| Scalar::Modular {
                    value,
                    modulus: *modulus,
                })
                .ok_or(ScalarError::DivisionByZero),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Coefficient-wise reduction of an integer coefficient list into `Z/p`.
pub fn reduce_integer_poly_mod_p(coeffs: &[BigInt], p: PrimeField) -> Vec<Scalar> {
    coeffs.iter().map(|c| p.to_scalar(&p.from_bigint(c))).collect()
}
