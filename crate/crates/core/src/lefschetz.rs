//! Artinian complete intersections in `P_n`: Hilbert functions, Gorenstein
//! checks, strong Lefschetz elements and the degree bounds that follow.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded_ideal::{
    contains_full_piece, coordinates, IdealPieceBasis, MembershipProblem,
};
use crate::linalg::{EchelonBasis, RankCertificate, SparseVec};
use crate::poly::{power_of_linear, Bidegree, PolyError, Polynomial, RingSpec};
use crate::scalar::Field;

/// Candidates tried by [`sl_candidates`] at most.
pub const MAX_SL_CANDIDATES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("generator degrees must be at least 1, got {0:?}")]
    ZeroDegree(Vec<u32>),
    #[error("expected {expected} generators in P_{n}, got {got}", n = expected - 1)]
    WrongCount { expected: usize, got: usize },
    #[error("generator {0} is zero or not homogeneous")]
    BadGenerator(usize),
    #[error("generators do not form a complete intersection: {0}")]
    NotCi(String),
    #[error("linear form expected")]
    NotLinear,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The Hilbert function `h(0..=s)` of an Artinian graded quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    pub coefficients: Vec<u64>,
}

impl HilbertFunction {
    pub fn socle_degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// `h(i)`, zero outside `0..=s`.
    pub fn at(&self, i: i64) -> u64 {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.coefficients.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    pub fn is_unimodal(&self) -> bool {
        let c = &self.coefficients;
        let peak = c.windows(2).position(|w| w[1] < w[0]).unwrap_or(c.len());
        c[peak..].windows(2).all(|w| w[1] <= w[0])
    }

    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

/// `prod_j (1 + t + ... + t^(m_j - 1))`.
pub fn hilbert_ci(degrees: &[u32]) -> Result<HilbertFunction, LefschetzError> {
    if degrees.contains(&0) {
        return Err(LefschetzError::ZeroDegree(degrees.to_vec()));
    }
    let mut h = vec![1u64];
    for &m in degrees {
        let mut next = vec![0u64; h.len() + m as usize - 1];
        for (i, &a) in h.iter().enumerate() {
            for slot in &mut next[i..i + m as usize] {
                *slot += a;
            }
        }
        h = next;
    }
    Ok(HilbertFunction { coefficients: h })
}

/// `P_n / (f_0, ..., f_n)` after checking that the generators form a
/// complete intersection.
///
/// The check compares the Hilbert function in every degree up to `s + 1`
/// with the product formula. Agreement there forces the quotient to vanish
/// from `s + 1` on, since it is generated in degree one.
#[derive(Debug, Clone)]
pub struct CIQuotient<F: Field> {
    ring: Arc<RingSpec>,
    field: F,
    degrees: Vec<u32>,
    generators: Vec<Polynomial<F>>,
    pieces: Vec<IdealPieceBasis<F>>,
    hilbert: HilbertFunction,
}

impl<F: Field> CIQuotient<F> {
    pub fn certify(ring: &Arc<RingSpec>, field: &F, generators: Vec<Polynomial<F>>) -> Result<Self, LefschetzError> {
        let n = ring.num_base() - 1;
        if generators.len() != n + 1 || ring.num_fiber() != 0 {
            return Err(LefschetzError::WrongCount {
                expected: n + 1,
                got: generators.len(),
            });
        }
        let mut degrees = Vec::with_capacity(n + 1);
        for (i, g) in generators.iter().enumerate() {
            match g.bidegree() {
                Some(d) if d.n == 0 && !g.is_zero() => degrees.push(d.m as u32),
                _ => return Err(LefschetzError::BadGenerator(i)),
            }
        }
        let expected = hilbert_ci(&degrees)?;
        let s = expected.socle_degree();
        let prob = MembershipProblem::new(ring, field, generators.clone(), Bidegree::new(0, 0))
            .map_err(|e| LefschetzError::NotCi(e.to_string()))?;
        let mut pieces = Vec::with_capacity(s + 1);
        let mut actual = Vec::with_capacity(s + 1);
        for m in 0..=s + 1 {
            let piece = IdealPieceBasis::build(&prob.at(Bidegree::new(m as i64, 0)));
            let q = (piece.piece_dim() - piece.rank()) as u64;
            if q != expected.at(m as i64) {
                return Err(LefschetzError::NotCi(format!(
                    "dim Q({m}) = {q}, complete intersection of degrees {degrees:?} needs {}",
                    expected.at(m as i64)
                )));
            }
            if m <= s {
                actual.push(q);
                pieces.push(piece);
            }
        }
        Ok(Self {
            ring: ring.clone(),
            field: field.clone(),
            degrees,
            generators,
            pieces,
            hilbert: HilbertFunction { coefficients: actual },
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.ring.num_base() - 1
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn socle_degree(&self) -> usize {
        self.hilbert.socle_degree()
    }

    pub fn hilbert(&self) -> &HilbertFunction {
        &self.hilbert
    }

    /// The ideal piece in degree `m <= s`.
    pub fn ideal_piece(&self, m: usize) -> &IdealPieceBasis<F> {
        &self.pieces[m]
    }

    pub fn membership(&self, m: i64) -> MembershipProblem<F> {
        MembershipProblem::new(&self.ring, &self.field, self.generators.clone(), Bidegree::new(m, 0))
            .expect("generators were checked")
    }
}

/// Hilbert function measured by ranks, `dim Q(i)` for `i = 0..=s`.
pub fn hilbert_actual<F: Field>(q: &CIQuotient<F>) -> HilbertFunction {
    q.hilbert.clone()
}

/// A multiplication map `l^i : Q(m) -> Q(m+i)` without maximal rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlFailure {
    pub m: usize,
    pub i: usize,
    pub rank: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlVerdict {
    pub failures: Vec<SlFailure>,
}

impl SlVerdict {
    pub fn is_sl(&self) -> bool {
        self.failures.is_empty()
    }
}

fn linear_degree<F: Field>(ell: &Polynomial<F>) -> bool {
    ell.bidegree() == Some(Bidegree::new(1, 0))
}

/// Checks that `l^i : Q(m) -> Q(m+i)` has maximal rank for all
/// `0 <= m <= m + i <= s`. Quotient pieces are spanned by standard
/// monomials; each map is assembled by reducing `l^i * u` for every
/// standard monomial `u` of degree `m`.
pub fn is_sl_element<F: Field>(q: &CIQuotient<F>, ell: &Polynomial<F>) -> Result<SlVerdict, LefschetzError> {
    if !linear_degree(ell) || **ell.ring() != *q.ring {
        return Err(LefschetzError::NotLinear);
    }
    let s = q.socle_degree();
    let standard: Vec<Vec<usize>> = (0..=s).map(|m| q.pieces[m].standard_monomials()).collect();
    // Position of each standard monomial among the standard ones.
    let local: Vec<Vec<u32>> = (0..=s)
        .map(|m| {
            let mut map = vec![u32::MAX; q.pieces[m].piece_dim()];
            for (k, &p) in standard[m].iter().enumerate() {
                map[p] = k as u32;
            }
            map
        })
        .collect();
    let mut failures = Vec::new();
    let mut power = Polynomial::one(&q.ring, &q.field);
    for i in 1..=s {
        power = &power * ell;
        for m in 0..=s - i {
            let (src, dst) = (&standard[m], &standard[m + i]);
            let expected = src.len().min(dst.len());
            if expected == 0 {
                continue;
            }
            let target = &q.pieces[m + i];
            let mut span = EchelonBasis::new(&q.field, dst.len());
            for &u in src {
                let mono = &q.pieces[m].piece().monomials()[u];
                let v = coordinates(target.piece(), &power.mul_monomial(mono));
                let res: SparseVec<F::Elem> = target
                    .echelon()
                    .residue(&v)
                    .into_iter()
                    .map(|(p, c)| (local[m + i][p as usize], c))
                    .collect();
                span.insert(&res);
                if span.rank() == expected {
                    break;
                }
            }
            if span.rank() < expected {
                failures.push(SlFailure {
                    m,
                    i,
                    rank: span.rank(),
                    expected,
                });
            }
        }
    }
    Ok(SlVerdict { failures })
}

/// Containment of `P_n(m)` for `m = sum m_j - n = s + 1` and a one-dimensional
/// socle at `m = s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleBoundCheck {
    pub bound: i64,
    pub full_at_bound: bool,
    pub socle_dim: usize,
}

impl SocleBoundCheck {
    pub fn holds(&self) -> bool {
        self.full_at_bound && self.socle_dim == 1
    }
}

pub fn gen3_bound_check<F: Field>(q: &CIQuotient<F>) -> SocleBoundCheck {
    let s = q.socle_degree() as i64;
    let bound = q.degrees.iter().map(|&m| m as i64).sum::<i64>() - q.n() as i64;
    debug_assert_eq!(bound, s + 1);
    SocleBoundCheck {
        bound,
        full_at_bound: contains_full_piece(&q.membership(bound)).full_target_rank,
        socle_dim: contains_full_piece(&q.membership(s)).deficiency(),
    }
}

/// Smallest integer `m` with `2m >= sum m_j + k - n - 1`.
pub fn gen4_bound(degrees: &[u32], k: u32, n: usize) -> i64 {
    let total = degrees.iter().map(|&m| m as i64).sum::<i64>() + k as i64 - n as i64 - 1;
    (total + 1).div_euclid(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerBoundCheck {
    pub k: u32,
    pub m: i64,
    pub bound: i64,
    pub certificate: RankCertificate,
}

impl PowerBoundCheck {
    pub fn at_or_above_bound(&self) -> bool {
        self.m >= self.bound
    }

    /// False only when the degree is past the bound and containment fails.
    pub fn consistent(&self) -> bool {
        !self.at_or_above_bound() || self.certificate.full_target_rank
    }
}

/// Containment of `P_n(m)` in `(f_0, ..., f_n, l^k)`.
pub fn gen4_bound_check<F: Field>(q: &CIQuotient<F>, ell: &Polynomial<F>, k: u32, m: i64) -> Result<PowerBoundCheck, LefschetzError> {
    if !linear_degree(ell) {
        return Err(LefschetzError::NotLinear);
    }
    let prob = q
        .membership(m)
        .with_generator(ell.pow(k))
        .map_err(|e| LefschetzError::NotCi(e.to_string()))?;
    Ok(PowerBoundCheck {
        k,
        m,
        bound: gen4_bound(&q.degrees, k, q.n()),
        certificate: contains_full_piece(&prob),
    })
}

/// Deterministic candidate list: the coordinate sum, then all nonzero
/// `{-1, 0, 1}` vectors, then seeded random vectors with entries in
/// `[-5, 5]`, capped at [`MAX_SL_CANDIDATES`] and at the number of nonzero
/// vectors in `[-5, 5]^num_vars`.
pub fn sl_candidates(num_vars: usize, seed: u64) -> Vec<Vec<i64>> {
    let cap = 11usize
        .checked_pow(num_vars as u32)
        .map_or(MAX_SL_CANDIDATES, |n| MAX_SL_CANDIDATES.min(n - 1));
    let sum = vec![1i64; num_vars];
    let mut out = vec![sum.clone()];
    let total = 3usize.pow(num_vars as u32);
    for code in 0..total {
        if out.len() >= cap {
            return out;
        }
        let mut c = code;
        let v: Vec<i64> = (0..num_vars)
            .map(|_| {
                let digit = (c % 3) as i64 - 1;
                c /= 3;
                digit
            })
            .collect();
        if v.iter().any(|&x| x != 0) && v != sum {
            out.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < cap {
        let v: Vec<i64> = (0..num_vars).map(|_| rng.gen_range(-5..=5)).collect();
        if v.iter().any(|&x| x != 0) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Seed used for the random tail of the candidate list.
pub const SL_SEED: u64 = 0x51;

/// First candidate that is a strong Lefschetz element for `q`.
pub fn find_sl_element<F: Field>(q: &CIQuotient<F>) -> Result<Option<(Vec<i64>, Polynomial<F>)>, LefschetzError> {
    for coeffs in sl_candidates(q.ring.num_base(), SL_SEED) {
        let elems: Vec<F::Elem> = coeffs.iter().map(|&c| q.field.from_i64(c)).collect();
        let ell = power_of_linear(&q.ring, &q.field, &elems, 1)?;
        if is_sl_element(q, &ell)?.is_sl() {
            return Ok(Some((coeffs, ell)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlSearch {
    Found(Vec<i64>),
    NotFound,
}

/// Certify that `f0, f1, f2` form a complete intersection in `P_2` and look
/// for a strong Lefschetz element among the deterministic candidates.
/// Intended for `f0` a power of a linear form, though any CI is accepted.
pub fn harima_watanabe_check<F: Field>(
    f0: &Polynomial<F>,
    f1: &Polynomial<F>,
    f2: &Polynomial<F>,
) -> Result<SlSearch, LefschetzError> {
    let ring = f0.ring().clone();
    if ring.num_base() != 3 || ring.num_fiber() != 0 {
        return Err(LefschetzError::WrongCount {
            expected: 3,
            got: ring.num_base(),
        });
    }
    let q = CIQuotient::certify(&ring, f0.field(), vec![f0.clone(), f1.clone(), f2.clone()])?;
    Ok(match find_sl_element(&q)? {
        Some((c, _)) => SlSearch::Found(c),
        None => SlSearch::NotFound,
    })
}

/// One named check inside a [`LefschetzReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LefschetzReport {
    pub degrees: Vec<u32>,
    pub hilbert: Vec<u64>,
    pub socle: usize,
    pub sl_element: Option<Vec<i64>>,
    pub checks: Vec<CheckRecord>,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        self.sl_element.is_some() && self.checks.iter().all(|c| c.passed)
    }
}

/// Full report for the monomial complete intersection `x_k^{m_k}` in
/// `P_{len-1}`: Hilbert function, Gorenstein checks, and an SL element.
pub fn monomial_ci_report<F: Field>(field: &F, degrees: &[u32]) -> Result<LefschetzReport, LefschetzError> {
    let expected = hilbert_ci(degrees)?;
    let ring = Arc::new(RingSpec::p(degrees.len() - 1));
    let gens = monomial_ci(&ring, field, degrees);
    let q = CIQuotient::certify(&ring, field, gens)?;
    let h = hilbert_actual(&q);
    let socle = gen3_bound_check(&q);
    let mut checks = vec![
        CheckRecord {
            name: "hilbert_matches_product".into(),
            passed: h == expected,
            detail: format!("{:?}", h.coefficients),
        },
        CheckRecord {
            name: "gorenstein_symmetry".into(),
            passed: h.is_symmetric(),
            detail: String::new(),
        },
        CheckRecord {
            name: "socle_bound".into(),
            passed: socle.holds(),
            detail: format!("full at {}: {}, socle dim {}", socle.bound, socle.full_at_bound, socle.socle_dim),
        },
    ];
    let sl = find_sl_element(&q)?;
    if sl.is_some() {
        checks.push(CheckRecord {
            name: "unimodal".into(),
            passed: h.is_unimodal(),
            detail: String::new(),
        });
    }
    Ok(LefschetzReport {
        degrees: degrees.to_vec(),
        hilbert: h.coefficients,
        socle: q.socle_degree(),
        sl_element: sl.map(|(c, _)| c),
        checks,
    })
}

/// `x_0^{m_0}, ..., x_n^{m_n}`.
pub fn monomial_ci<F: Field>(ring: &Arc<RingSpec>, field: &F, degrees: &[u32]) -> Vec<Polynomial<F>> {
    (0..degrees.len())
        .map(|k| {
            let mut e = vec![0u16; degrees.len()];
            e[k] = degrees[k] as u16;
            Polynomial::base_monomial(ring, field, &e)
        })
        .collect()
}
