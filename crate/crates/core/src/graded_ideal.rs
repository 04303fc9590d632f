//! Graded pieces of homogeneous ideals: multiplication matrices, containment
//! of a full piece, quotient dimensions and the saturation-style ideal `J`
//! of elements that multiply a fixed piece into the ideal.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rref, EchelonBasis, Eliminate, ExactMatrix, RankCertificate, SparseColumns, SparseVec};
use crate::poly::{Bidegree, PieceIndex, Polynomial, RingSpec};
use crate::scalar::{Field, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} lives in a different ring")]
    RingMismatch(usize),
    #[error("polynomial is not homogeneous")]
    ElementNotHomogeneous,
    #[error("bidegree {got} does not match the ideal piece at {expected}")]
    WrongBidegree { expected: Bidegree, got: Bidegree },
}

/// Does the ideal generated by `generators` contain all of `ring(target)`?
#[derive(Debug, Clone)]
pub struct MembershipProblem<F: Field> {
    ring: Arc<RingSpec>,
    field: F,
    generators: Vec<Polynomial<F>>,
    target: Bidegree,
}

impl<F: Field> MembershipProblem<F> {
    pub fn new(
        ring: &Arc<RingSpec>,
        field: &F,
        generators: Vec<Polynomial<F>>,
        target: Bidegree,
    ) -> Result<Self, IdealError> {
        for (i, g) in generators.iter().enumerate() {
            if **g.ring() != **ring {
                return Err(IdealError::RingMismatch(i));
            }
            if !g.is_zero() && !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(i));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            field: field.clone(),
            generators,
            target,
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn target(&self) -> Bidegree {
        self.target
    }

    /// The same generators at another target bidegree.
    pub fn at(&self, target: Bidegree) -> Self {
        Self {
            target,
            ..self.clone()
        }
    }

    /// Add one more generator.
    pub fn with_generator(&self, g: Polynomial<F>) -> Result<Self, IdealError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(&self.ring, &self.field, gens, self.target)
    }
}

/// Coordinates of `p` in the monomial basis of `piece`. Terms outside the
/// piece are an error only in debug builds; callers pass homogeneous input.
pub fn coordinates<F: Field>(piece: &PieceIndex, p: &Polynomial<F>) -> SparseVec<F::Elem> {
    p.terms()
        .filter_map(|(m, c)| piece.position(m).map(|i| (i, c.clone())))
        .collect()
}

fn push_columns<F: Field>(
    ring: &RingSpec,
    piece: &PieceIndex,
    g: &Polynomial<F>,
    target: Bidegree,
    out: &mut Vec<SparseVec<F::Elem>>,
) {
    let Some(deg) = g.bidegree() else { return };
    let source = target - deg;
    for c in ring.basis(source) {
        let col: SparseVec<F::Elem> = g
            .terms()
            .map(|(m, v)| {
                let pos = piece
                    .position(&m.mul(&c))
                    .expect("product lies in the target piece");
                (pos, v.clone())
            })
            .collect();
        out.push(col);
    }
}

/// The multiplication matrix of `(h_1..h_k) -> sum g_i h_i` into the target
/// piece. Rows follow `ring.basis(target)`; columns run over generators in
/// order and, for each, over the basis of its source piece. Zero generators
/// and generators with an empty source piece contribute no columns.
pub fn build_matrix<F: Field>(prob: &MembershipProblem<F>) -> SparseColumns<F> {
    let piece = prob.ring.piece(prob.target);
    build_matrix_in(prob, &piece)
}

fn build_matrix_in<F: Field>(prob: &MembershipProblem<F>, piece: &PieceIndex) -> SparseColumns<F> {
    let mut cols = Vec::new();
    for g in &prob.generators {
        push_columns(&prob.ring, piece, g, prob.target, &mut cols);
    }
    SparseColumns::new(&prob.field, piece.len(), cols)
}

/// Rank certificate of the multiplication matrix. `full_target_rank` is the
/// containment verdict.
pub fn contains_full_piece<F: Field>(prob: &MembershipProblem<F>) -> RankCertificate {
    build_matrix(prob).rank_certificate()
}

/// `dim ring(target) - rank`, the dimension of the quotient piece.
pub fn quotient_piece_dim<F: Field>(prob: &MembershipProblem<F>) -> usize {
    contains_full_piece(prob).deficiency()
}

/// The span of an ideal inside one graded piece, kept in echelon form so
/// that membership of further vectors is a single reduction.
#[derive(Debug, Clone)]
pub struct IdealPieceBasis<F: Field> {
    ring: Arc<RingSpec>,
    field: F,
    piece: PieceIndex,
    basis: EchelonBasis<F>,
    certificate: RankCertificate,
}

impl<F: Field> IdealPieceBasis<F> {
    pub fn build(prob: &MembershipProblem<F>) -> Self {
        let piece = prob.ring.piece(prob.target);
        let (certificate, basis) = build_matrix_in(prob, &piece).span_basis();
        Self {
            ring: prob.ring.clone(),
            field: prob.field.clone(),
            piece,
            basis,
            certificate,
        }
    }

    pub fn target(&self) -> Bidegree {
        self.piece.bidegree()
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn piece(&self) -> &PieceIndex {
        &self.piece
    }

    pub fn piece_dim(&self) -> usize {
        self.piece.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_full(&self) -> bool {
        self.basis.is_full()
    }

    pub fn certificate(&self) -> &RankCertificate {
        &self.certificate
    }

    pub fn echelon(&self) -> &EchelonBasis<F> {
        &self.basis
    }

    /// Monomials of the piece that carry no pivot. Their classes form a
    /// basis of the quotient piece.
    pub fn standard_monomials(&self) -> Vec<usize> {
        self.basis.free_positions()
    }

    fn check(&self, p: &Polynomial<F>) -> Result<(), IdealError> {
        match p.bidegree() {
            None if p.is_zero() => Ok(()),
            None => Err(IdealError::ElementNotHomogeneous),
            Some(d) if d == self.target() => Ok(()),
            Some(d) => Err(IdealError::WrongBidegree {
                expected: self.target(),
                got: d,
            }),
        }
    }

    /// Canonical residue of `p` modulo the ideal piece, supported on the
    /// standard monomials.
    pub fn reduce(&self, p: &Polynomial<F>) -> Result<SparseVec<F::Elem>, IdealError> {
        self.check(p)?;
        Ok(self.basis.residue(&coordinates(&self.piece, p)))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool, IdealError> {
        Ok(self.reduce(p)?.is_empty())
    }

    /// Dense reduced row-echelon matrix of the span, rows = basis vectors.
    pub fn rref_rows(&self) -> ExactMatrix<F>
    where
        F: Eliminate,
    {
        let n = self.piece.len();
        let mut rows = Vec::with_capacity(self.basis.rank());
        for p in self.basis.pivots() {
            let mut unit = vec![(p as u32, self.field.one())];
            // Recover the stored row as the difference between the unit
            // vector and its residue.
            let res = self.basis.residue(&unit);
            let mut dense = vec![self.field.zero(); n];
            for (i, v) in unit.drain(..) {
                dense[i as usize] = v;
            }
            for (i, v) in res {
                dense[i as usize] = self.field.sub(&dense[i as usize], &v);
            }
            rows.push(dense);
        }
        if rows.is_empty() {
            return ExactMatrix::zeros(&self.field, 0, n);
        }
        rref(&ExactMatrix::from_rows(&self.field, rows)).0
    }
}

/// Is `r` in `J = { r : r * S ∩ S(ambient) ⊂ I }`, where the ideal piece of
/// `I` at the ambient bidegree is given? Checked on every monomial multiple
/// of `r` that lands in the ambient piece.
pub fn in_j<F: Field>(r: &Polynomial<F>, ideal_piece: &IdealPieceBasis<F>) -> Result<bool, IdealError> {
    Ok(j_witness(r, ideal_piece)?.is_none())
}

/// Like [`in_j`], returning the first complementary monomial whose multiple
/// escapes the ideal, with its residue size.
pub fn j_witness<F: Field>(
    r: &Polynomial<F>,
    ideal_piece: &IdealPieceBasis<F>,
) -> Result<Option<(crate::poly::Monomial, usize)>, IdealError> {
    if r.is_zero() {
        return Ok(None);
    }
    let deg = r.bidegree().ok_or(IdealError::ElementNotHomogeneous)?;
    if ideal_piece.is_full() {
        return Ok(None);
    }
    let ring = ideal_piece.ring();
    for c in ring.basis(ideal_piece.target() - deg) {
        let v = coordinates(ideal_piece.piece(), &r.mul_monomial(&c));
        let res = ideal_piece.basis.residue(&v);
        if !res.is_empty() {
            return Ok(Some((c, res.len())));
        }
    }
    Ok(None)
}

/// Serialized form of one containment certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRecord {
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    pub target: Bidegree,
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub full: bool,
    pub elapsed_ms: u64,
}

impl CertificateRecord {
    pub fn new(type_label: Option<String>, target: Bidegree, cert: &RankCertificate, elapsed_ms: u64) -> Self {
        Self {
            type_label,
            target,
            field: cert.field,
            rows: cert.rows,
            cols: cert.cols,
            rank: cert.rank,
            full: cert.full_target_rank,
            elapsed_ms,
        }
    }
}

/// Run [`contains_full_piece`] and time it.
pub fn certify<F: Field>(prob: &MembershipProblem<F>, type_label: Option<String>) -> (RankCertificate, CertificateRecord) {
    let start = Instant::now();
    let cert = contains_full_piece(prob);
    let ms = start.elapsed().as_millis() as u64;
    let rec = CertificateRecord::new(type_label, prob.target, &cert, ms);
    (cert, rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::scalar::{PrimeField, Rationals};

    fn p2() -> Arc<RingSpec> {
        Arc::new(RingSpec::p(2))
    }

    fn mono<F: Field>(ring: &Arc<RingSpec>, f: &F, e: &[u16]) -> Polynomial<F> {
        Polynomial::base_monomial(ring, f, e)
    }

    #[test]
    fn variables_span_degree_one() {
        let r = p2();
        let f = Rationals;
        let gens = vec![mono(&r, &f, &[1, 0, 0]), mono(&r, &f, &[0, 1, 0]), mono(&r, &f, &[0, 0, 1])];
        let prob = MembershipProblem::new(&r, &f, gens, Bidegree::new(1, 0)).unwrap();
        let m = build_matrix(&prob);
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert!(contains_full_piece(&prob).full_target_rank);
    }

    #[test]
    fn empty_source_gives_no_columns() {
        let r = p2();
        let f = Rationals;
        let prob = MembershipProblem::new(&r, &f, vec![mono(&r, &f, &[2, 0, 0])], Bidegree::new(1, 0)).unwrap();
        let m = build_matrix(&prob);
        assert_eq!((m.rows(), m.cols()), (3, 0));
        assert_eq!(quotient_piece_dim(&prob), 3);
    }

    #[test]
    fn missing_variable_never_full() {
        let r = p2();
        let f = PrimeField::default();
        for a in 1..4 {
            let gens = vec![mono(&r, &f, &[a, 0, 0]), mono(&r, &f, &[0, a, 0])];
            for m in 0..9 {
                let prob = MembershipProblem::new(&r, &f, gens.clone(), Bidegree::new(m, 0)).unwrap();
                assert!(!contains_full_piece(&prob).full_target_rank);
            }
        }
    }

    #[test]
    fn fermat_socle() {
        let r = Arc::new(RingSpec::p(3));
        let f = PrimeField::default();
        let gens: Vec<_> = (0..4)
            .map(|k| {
                let mut e = [0u16; 4];
                e[k] = 3;
                mono(&r, &f, &e)
            })
            .collect();
        let prob = MembershipProblem::new(&r, &f, gens, Bidegree::new(8, 0)).unwrap();
        let cert = contains_full_piece(&prob);
        assert!(!cert.full_target_rank);
        assert_eq!(cert.deficiency(), 1);
        assert_eq!(quotient_piece_dim(&prob.at(Bidegree::new(4, 0))), 19);
    }

    #[test]
    fn j_membership_basics() {
        let r = p2();
        let f = Rationals;
        let gens = vec![mono(&r, &f, &[2, 0, 0]), mono(&r, &f, &[0, 2, 0])];
        let prob = MembershipProblem::new(&r, &f, gens, Bidegree::new(3, 0)).unwrap();
        let piece = IdealPieceBasis::build(&prob);
        let one = Polynomial::one(&r, &f);
        assert!(!in_j(&one, &piece).unwrap());
        // x0 * x1 * S(1) lies in (x0^2, x1^2) except x0 x1 x2.
        assert!(!in_j(&mono(&r, &f, &[1, 1, 0]), &piece).unwrap());
        assert!(in_j(&mono(&r, &f, &[2, 0, 0]), &piece).unwrap());
        assert!(in_j(&mono(&r, &f, &[1, 1, 1]), &piece).is_ok());
        let x2 = Polynomial::var(&r, &f, Var::Base(2));
        let rr = piece.rref_rows();
        assert_eq!(rr.rows(), piece.rank());
        assert!(!piece.contains(&x2.pow(3)).unwrap());
        assert!(piece.contains(&mono(&r, &f, &[0, 2, 1])).unwrap());
    }
}
