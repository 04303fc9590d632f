use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Bidegree, Monomial, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type entries {0:?} do not all have the same parity")]
    Parity([u32; 4]),
    #[error("type entry {0} is too large for desk-scale computation")]
    TooLarge(u32),
}

/// A quadric surface bundle type `(d0, d1, d2, d3)` with its derived twists.
///
/// Entries are sorted ascending on construction; `input` keeps the order the
/// caller supplied. The shift `d` is the smallest entry, so `r0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeTuple {
    input: [u32; 4],
    d: [u32; 4],
    r: [i64; 4],
    shift: i64,
    t: i64,
}

impl TypeTuple {
    pub fn new(input: [u32; 4]) -> Result<Self, TypeError> {
        if input.iter().any(|d| d % 2 != input[0] % 2) {
            return Err(TypeError::Parity(input));
        }
        if let Some(&big) = input.iter().find(|&&d| d > 200) {
            return Err(TypeError::TooLarge(big));
        }
        let mut d = input;
        d.sort_unstable();
        let shift = d[0] as i64;
        let r = d.map(|dj| (dj as i64 - shift) / 2);
        let t = 4 * shift - 3 + r.iter().sum::<i64>();
        Ok(Self {
            input,
            d,
            r,
            shift,
            t,
        })
    }

    /// Entries in the order they were given.
    pub fn input(&self) -> [u32; 4] {
        self.input
    }

    /// Sorted entries `d0 <= d1 <= d2 <= d3`.
    pub fn degrees(&self) -> [u32; 4] {
        self.d
    }

    pub fn dj(&self, j: usize) -> i64 {
        self.d[j] as i64
    }

    pub fn twists(&self) -> [i64; 4] {
        self.r
    }

    pub fn rj(&self, j: usize) -> i64 {
        self.r[j]
    }

    /// The shift `d` with `d_j = 2 r_j + d`.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// `t = 4d - 3 + r0 + r1 + r2 + r3`.
    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn is_trivial(&self) -> bool {
        self.d == [0; 4]
    }

    /// Bidegree of the quadratic form `f`.
    pub fn f_bidegree(&self) -> Bidegree {
        Bidegree::new(self.shift, 2)
    }

    /// Bidegree of the auxiliary form `g`.
    pub fn g_bidegree(&self) -> Bidegree {
        Bidegree::new(self.t - self.shift, 2)
    }

    /// Bidegree of the piece that must lie in the ideal.
    pub fn target(&self) -> Bidegree {
        Bidegree::new(self.t, 4)
    }
}

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.d;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingLabel {
    S,
    T,
    U,
    P(usize),
}

impl fmt::Display for RingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingLabel::S => write!(f, "S"),
            RingLabel::T => write!(f, "T"),
            RingLabel::U => write!(f, "U"),
            RingLabel::P(n) => write!(f, "P{n}"),
        }
    }
}

/// A variable of a ring: base variables `x_k` or fiber variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Base(usize),
    Fiber(usize),
}

/// A bigraded polynomial ring: base variables of bidegree `(1,0)` and fiber
/// variables of bidegree `(-w_j, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    num_base: usize,
    fiber_weights: Vec<i64>,
    fiber_names: Vec<String>,
    label: RingLabel,
}

impl RingSpec {
    /// # Panics
    /// If there are more than eight variables, no base variables, or a
    /// negative fiber weight.
    pub fn new(
        num_base: usize,
        fiber_weights: Vec<i64>,
        fiber_names: Vec<String>,
        label: RingLabel,
    ) -> Self {
        assert!(num_base >= 1, "ring needs a base variable");
        assert!(num_base + fiber_weights.len() <= MAX_VARS, "too many variables");
        assert_eq!(fiber_weights.len(), fiber_names.len());
        assert!(fiber_weights.iter().all(|&w| w >= 0), "fiber weights are nonnegative");
        Self {
            num_base,
            fiber_weights,
            fiber_names,
            label,
        }
    }

    /// The Cox ring `S = C[x0,x1,x2; y0..y3]`, `deg y_j = (-r_j, 1)`.
    pub fn s(ty: &TypeTuple) -> Self {
        let names = (0..4).map(|j| format!("y{j}")).collect();
        Self::new(3, ty.twists().to_vec(), names, RingLabel::S)
    }

    /// `T = C[x0,x1,x2; z0,z1]`, `deg z_j = (-d_j, 1)`.
    pub fn t(ty: &TypeTuple) -> Self {
        let w = vec![ty.dj(0), ty.dj(1)];
        Self::new(3, w, vec!["z0".into(), "z1".into()], RingLabel::T)
    }

    /// `U = C[x0,x1,x2; z1,z3]`, `deg z_j = (-d_j, 1)`.
    pub fn u(ty: &TypeTuple) -> Self {
        let w = vec![ty.dj(1), ty.dj(3)];
        Self::new(3, w, vec!["z1".into(), "z3".into()], RingLabel::U)
    }

    /// `P_n = C[x0..xn]` with the standard grading, realized as bidegrees `(m, 0)`.
    pub fn p(n: usize) -> Self {
        Self::new(n + 1, Vec::new(), Vec::new(), RingLabel::P(n))
    }

    pub fn num_base(&self) -> usize {
        self.num_base
    }

    pub fn num_fiber(&self) -> usize {
        self.fiber_weights.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_base + self.fiber_weights.len()
    }

    pub fn fiber_weights(&self) -> &[i64] {
        &self.fiber_weights
    }

    pub fn label(&self) -> RingLabel {
        self.label
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.num_base)
            .map(Var::Base)
            .chain((0..self.num_fiber()).map(Var::Fiber))
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            Var::Base(k) => format!("x{k}"),
            Var::Fiber(j) => self.fiber_names[j].clone(),
        }
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        if let Some(k) = name.strip_prefix('x').and_then(|k| k.parse::<usize>().ok()) {
            if k < self.num_base && name == format!("x{k}") {
                return Some(Var::Base(k));
            }
        }
        self.fiber_names
            .iter()
            .position(|n| n == name)
            .map(Var::Fiber)
    }

    pub fn var_bidegree(&self, v: Var) -> Bidegree {
        match v {
            Var::Base(_) => Bidegree::new(1, 0),
            Var::Fiber(j) => Bidegree::new(-self.fiber_weights[j], 1),
        }
    }

    pub fn bidegree_of(&self, mono: &Monomial) -> Bidegree {
        let base: i64 = mono.base_exponents().iter().map(|&a| a as i64).sum();
        let fib = mono.fiber_exponents();
        let n: i64 = fib.iter().map(|&b| b as i64).sum();
        let shift: i64 = fib
            .iter()
            .zip(&self.fiber_weights)
            .map(|(&b, &w)| b as i64 * w)
            .sum();
        Bidegree::new(base - shift, n)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.num_base, self.num_fiber())
    }

    pub fn var_monomial(&self, v: Var) -> Monomial {
        let mut m = self.one();
        m.set_exponent(v, 1);
        m
    }

    /// All monomials of bidegree `deg`, in descending lexicographic order on
    /// (fiber exponents, base exponents). Within one piece the fiber degree is
    /// fixed, so this is graded-lex on fiber then base exponents.
    pub fn basis(&self, deg: Bidegree) -> Vec<Monomial> {
        let mut out = Vec::new();
        if deg.n < 0 {
            return out;
        }
        for fib in compositions(deg.n as u32, self.num_fiber()) {
            let e = deg.m
                + fib
                    .iter()
                    .zip(&self.fiber_weights)
                    .map(|(&b, &w)| b as i64 * w)
                    .sum::<i64>();
            if e < 0 {
                continue;
            }
            for base in compositions(e as u32, self.num_base) {
                out.push(Monomial::from_parts(&base, &fib));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// `dim S(m,n)`, counted without enumerating the piece.
    pub fn dim(&self, deg: Bidegree) -> u64 {
        if deg.n < 0 {
            return 0;
        }
        compositions(deg.n as u32, self.num_fiber())
            .into_iter()
            .map(|fib| {
                let e = deg.m
                    + fib
                        .iter()
                        .zip(&self.fiber_weights)
                        .map(|(&b, &w)| b as i64 * w)
                        .sum::<i64>();
                if e < 0 {
                    0
                } else {
                    binomial(e as u64 + self.num_base as u64 - 1, self.num_base as u64 - 1)
                }
            })
            .sum()
    }

    pub fn piece(&self, deg: Bidegree) -> PieceIndex {
        PieceIndex::new(deg, self.basis(deg))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.label)?;
        let names: Vec<_> = self.vars().map(|v| self.var_name(v)).collect();
        write!(f, "{}]", names.join(","))
    }
}

/// A graded piece with a monomial-to-position lookup.
#[derive(Debug, Clone)]
pub struct PieceIndex {
    deg: Bidegree,
    monos: Vec<Monomial>,
    lookup: HashMap<Monomial, u32>,
}

impl PieceIndex {
    pub fn new(deg: Bidegree, monos: Vec<Monomial>) -> Self {
        let lookup = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        Self { deg, monos, lookup }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.deg
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<u32> {
        self.lookup.get(m).copied()
    }
}

/// All exponent vectors of length `parts` summing to `total`, in
/// lexicographically descending order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u16>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if parts == 1 {
            prefix.push(total as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first as u16);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(d: [u32; 4]) -> TypeTuple {
        TypeTuple::new(d).unwrap()
    }

    #[test]
    fn type_tuple_derivations() {
        let t = ty([2, 2, 2, 2]);
        assert_eq!((t.shift(), t.twists(), t.t()), (2, [0; 4], 5));
        let t = ty([4, 0, 2, 2]);
        assert_eq!(t.degrees(), [0, 2, 2, 4]);
        assert_eq!(t.input(), [4, 0, 2, 2]);
        assert_eq!((t.shift(), t.twists(), t.t()), (0, [0, 1, 1, 2], 1));
        let t = ty([3, 3, 3, 5]);
        assert_eq!((t.shift(), t.twists(), t.t()), (3, [0, 0, 0, 1], 10));
        for j in 0..4 {
            assert_eq!(t.dj(j), 2 * t.rj(j) + t.shift());
        }
        assert_eq!(TypeTuple::new([1, 2, 2, 2]), Err(TypeError::Parity([1, 2, 2, 2])));
    }

    #[test]
    fn basis_examples() {
        let s = RingSpec::s(&ty([0, 0, 0, 0]));
        assert_eq!(s.basis(Bidegree::new(1, 1)).len(), 12);
        assert_eq!(s.basis(Bidegree::new(5, 4)).len(), 735);
        assert_eq!(s.dim(Bidegree::new(5, 4)), 735);

        let s = RingSpec::s(&ty([0, 2, 2, 4]));
        let b = s.basis(Bidegree::new(-2, 1));
        assert_eq!(b, vec![s.var_monomial(Var::Fiber(3))]);
    }

    #[test]
    fn dim_examples() {
        assert_eq!(RingSpec::p(3).dim(Bidegree::new(8, 0)), 165);
        let s = RingSpec::s(&ty([1, 1, 1, 3]));
        assert_eq!(s.dim(Bidegree::new(3, -1)), 0);
        assert_eq!(s.dim(Bidegree::new(2, 4)), 371);
        assert_eq!(RingSpec::p(2).dim(Bidegree::new(-1, 0)), 0);
    }

    #[test]
    fn dim_matches_basis_len() {
        for d in [[0, 0, 0, 0], [0, 2, 2, 4], [1, 1, 3, 5], [0, 0, 2, 6]] {
            let t = ty(d);
            for ring in [RingSpec::s(&t), RingSpec::t(&t), RingSpec::u(&t)] {
                for m in -6..8 {
                    for n in -1..5 {
                        let deg = Bidegree::new(m, n);
                        assert_eq!(ring.dim(deg), ring.basis(deg).len() as u64, "{ring} {deg}");
                    }
                }
            }
        }
    }

    #[test]
    fn basis_monomials_have_requested_bidegree() {
        let ring = RingSpec::s(&ty([1, 3, 3, 5]));
        let deg = Bidegree::new(2, 3);
        for m in ring.basis(deg) {
            assert_eq!(ring.bidegree_of(&m), deg);
        }
    }

    #[test]
    fn var_names() {
        let t = ty([0, 2, 2, 4]);
        let u = RingSpec::u(&t);
        assert_eq!(u.var_by_name("z3"), Some(Var::Fiber(1)));
        assert_eq!(u.var_by_name("z0"), None);
        assert_eq!(u.var_by_name("x2"), Some(Var::Base(2)));
        assert_eq!(u.var_by_name("x3"), None);
        assert_eq!(u.var_bidegree(Var::Fiber(1)), Bidegree::new(-4, 1));
    }
}
