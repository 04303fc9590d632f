use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::ring::compositions;
use super::{Bidegree, Monomial, PolyError, RingSpec, Var};
use crate::scalar::Field;

/// A sparse polynomial with exact coefficients. Zero coefficients are never
/// stored.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<RingSpec>,
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<RingSpec>, field: &F) -> Self {
        Self {
            ring: ring.clone(),
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, field: &F, c: F::Elem) -> Self {
        Self::term(ring, field, ring.one(), c)
    }

    pub fn one(ring: &Arc<RingSpec>, field: &F) -> Self {
        Self::constant(ring, field, field.one())
    }

    pub fn term(ring: &Arc<RingSpec>, field: &F, mono: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(ring, field);
        if !field.is_zero(&c) {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn var(ring: &Arc<RingSpec>, field: &F, v: Var) -> Self {
        Self::term(ring, field, ring.var_monomial(v), field.one())
    }

    /// `x0^a0 x1^a1 ...` on the base variables only.
    pub fn base_monomial(ring: &Arc<RingSpec>, field: &F, exps: &[u16]) -> Self {
        let mut m = ring.one();
        for (k, &e) in exps.iter().enumerate() {
            m.set_exponent(Var::Base(k), e);
        }
        Self::term(ring, field, m, field.one())
    }

    pub fn from_terms(
        ring: &Arc<RingSpec>,
        field: &F,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(ring, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    /// The common bidegree of all terms; `None` for zero or inhomogeneous
    /// polynomials.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self.terms.keys().map(|m| self.ring.bidegree_of(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.bidegree().is_some()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring, &self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        self.map_coefficients(|c| self.field.neg(c))
    }

    fn map_coefficients(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        let mut out = Self::zero(&self.ring, &self.field);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map_coefficients(|x| self.field.mul(x, c))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            ring: self.ring.clone(),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.ring, &self.field);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative.
    ///
    /// Fails if an exponent that becomes a coefficient is not below a
    /// positive characteristic, since the derivative could then vanish
    /// spuriously.
    pub fn partial(&self, v: Var) -> Result<Self, PolyError> {
        let ch = self.field.characteristic();
        let mut out = Self::zero(&self.ring, &self.field);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            if ch != 0 && e as u64 >= ch {
                return Err(PolyError::CharacteristicTooSmall {
                    exponent: e as u64,
                    characteristic: ch,
                });
            }
            let mut m2 = *m;
            m2.set_exponent(v, e - 1);
            out.add_term(m2, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// Replace the ring, keeping base exponents. Only allowed for polynomials
    /// without fiber variables, into a ring with the same base variables.
    pub fn embed_base(&self, ring: &Arc<RingSpec>) -> Result<Self, PolyError> {
        if ring.num_base() != self.ring.num_base() {
            return Err(PolyError::RingMismatch(
                self.ring.to_string(),
                ring.to_string(),
            ));
        }
        let mut out = Self::zero(ring, &self.field);
        for (m, c) in &self.terms {
            if m.fiber_exponents().iter().any(|&b| b != 0) {
                return Err(PolyError::NotBaseOnly);
            }
            let m2 = Monomial::from_parts(m.base_exponents(), &vec![0; ring.num_fiber()]);
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Largest exponent of any variable in any term.
    pub fn max_exponent(&self) -> u16 {
        self.terms.keys().map(Monomial::max_exponent).max().unwrap_or(0)
    }
}

/// `(c_0 x_0 + ... + c_{k} x_k)^exponent` over the base variables of `ring`,
/// expanded through multinomial coefficients.
pub fn power_of_linear<F: Field>(
    ring: &Arc<RingSpec>,
    field: &F,
    coeffs: &[F::Elem],
    exponent: u32,
) -> Result<Polynomial<F>, PolyError> {
    let nb = ring.num_base();
    if coeffs.len() != nb {
        return Err(PolyError::LinearArity {
            expected: nb,
            got: coeffs.len(),
        });
    }
    let ch = field.characteristic();
    if ch != 0 && exponent as u64 >= ch {
        return Err(PolyError::CharacteristicTooSmall {
            exponent: exponent as u64,
            characteristic: ch,
        });
    }
    let factorial = |n: u32| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let top = factorial(exponent);
    let mut out = Polynomial::zero(ring, field);
    for exps in compositions(exponent, nb) {
        let denom = exps
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e as u32));
        let mut c = field.from_bigint(&(&top / denom));
        for (coef, &e) in coeffs.iter().zip(&exps) {
            for _ in 0..e {
                c = field.mul(&c, coef);
            }
        }
        let mut m = ring.one();
        for (k, &e) in exps.iter().enumerate() {
            m.set_exponent(Var::Base(k), e);
        }
        out.add_term(m, c);
    }
    Ok(out)
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    /// # Panics
    /// On ring mismatch; use [`Polynomial::try_add`] to get an error instead.
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.neg_ref()
    }
}
