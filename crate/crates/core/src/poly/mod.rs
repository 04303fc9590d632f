//! Sparse polynomials over bigraded rings.

mod polynomial;
mod ring;
mod text;

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use polynomial::{power_of_linear, Polynomial};
pub use ring::{PieceIndex, RingLabel, RingSpec, TypeError, TypeTuple, Var};
pub use text::ParseError;


/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("exponent {exponent} not below the characteristic {characteristic}")]
    CharacteristicTooSmall { exponent: u64, characteristic: u64 },
    #[error("expected {expected} linear coefficients, got {got}")]
    LinearArity { expected: usize, got: usize },
    #[error("polynomial uses fiber variables and cannot be moved to another ring")]
    NotBaseOnly,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A bidegree `(m, n)`. The first component may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Bidegree {
    pub m: i64,
    pub n: i64,
}

impl Bidegree {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.m + o.m, self.n + o.n)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.m - o.m, self.n - o.n)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl From<[i64; 2]> for Bidegree {
    fn from([m, n]: [i64; 2]) -> Self {
        Bidegree::new(m, n)
    }
}

impl From<Bidegree> for [i64; 2] {
    fn from(b: Bidegree) -> Self {
        [b.m, b.n]
    }
}

impl FromStr for Bidegree {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (m, n) = s
            .split_once(',')
            .ok_or_else(|| format!("bidegree {s:?} is not of the form m,n"))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
        Ok(Bidegree::new(parse(m)?, parse(n)?))
    }
}

/// A monomial. Fiber exponents are stored before base exponents, so the
/// derived ordering is lexicographic on (fiber, base).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nfib: u8,
    nbase: u8,
}

impl Monomial {
    pub fn one(num_base: usize, num_fiber: usize) -> Self {
        assert!(num_base + num_fiber <= MAX_VARS);
        Self {
            exps: [0; MAX_VARS],
            nfib: num_fiber as u8,
            nbase: num_base as u8,
        }
    }

    pub fn from_parts(base: &[u16], fiber: &[u16]) -> Self {
        let mut m = Self::one(base.len(), fiber.len());
        m.exps[..fiber.len()].copy_from_slice(fiber);
        m.exps[fiber.len()..fiber.len() + base.len()].copy_from_slice(base);
        m
    }

    pub fn base_exponents(&self) -> &[u16] {
        let f = self.nfib as usize;
        &self.exps[f..f + self.nbase as usize]
    }

    pub fn fiber_exponents(&self) -> &[u16] {
        &self.exps[..self.nfib as usize]
    }

    fn slot(&self, v: Var) -> usize {
        match v {
            Var::Base(k) => self.nfib as usize + k,
            Var::Fiber(j) => j,
        }
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exps[self.slot(v)]
    }

    pub fn set_exponent(&mut self, v: Var, e: u16) {
        let s = self.slot(v);
        self.exps[s] = e;
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!((self.nfib, self.nbase), (other.nfib, other.nbase));
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps) {
            *a += b;
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps).all(|(a, b)| *a <= b)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn max_exponent(&self) -> u16 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}y{:?}", self.base_exponents(), self.fiber_exponents())
    }
}
