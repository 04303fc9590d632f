//! Exact linear algebra: dense row reduction, an incremental sparse echelon
//! basis for large certificates, and rank certificates.

mod dense;
mod echelon;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dense::{is_surjective, rank, row_space_reduce, rref, Eliminate, ExactMatrix};
pub use echelon::EchelonBasis;

use crate::scalar::{Field, FieldSpec};

/// Sparse vector as `(index, value)` pairs.
pub type SparseVec<E> = Vec<(u32, E)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not in reduced row-echelon form")]
    NotReduced,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("malformed matrix dump: {0}")]
    BadDump(String),
}

/// Witness for the rank of a matrix whose rows index the target space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// `rank == rows`: the columns span the whole target.
    pub full_target_rank: bool,
}

impl RankCertificate {
    pub fn new(rows: usize, cols: usize, field: FieldSpec, pivot_cols: Vec<usize>) -> Self {
        let rank = pivot_cols.len();
        debug_assert!(rank <= rows.min(cols));
        Self {
            rows,
            cols,
            field,
            rank,
            pivot_cols,
            full_target_rank: rank == rows,
        }
    }

    /// Dimension of the cokernel, `rows - rank`.
    pub fn deficiency(&self) -> usize {
        self.rows - self.rank
    }
}

/// A matrix stored as sparse columns. Used for the large multiplication
/// matrices whose columns are products `generator * monomial`.
#[derive(Debug, Clone)]
pub struct SparseColumns<F: Field> {
    field: F,
    rows: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseColumns<F> {
    pub fn new(field: &F, rows: usize, columns: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.iter().all(|(i, _)| (*i as usize) < rows)));
        Self {
            field: field.clone(),
            rows,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F::Elem> {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> ExactMatrix<F> {
        let mut m = ExactMatrix::zeros(&self.field, self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i as usize, j, v.clone());
            }
        }
        m
    }

    /// Rank of the matrix, inserting columns sparsest first and stopping as
    /// soon as the columns span the target. Pivot columns in the certificate
    /// are the original indices of the independent columns found, ascending.
    pub fn rank_certificate(&self) -> RankCertificate {
        self.span_basis().0
    }

    /// Like [`rank_certificate`](Self::rank_certificate), also returning the
    /// echelon basis of the column span.
    pub fn span_basis(&self) -> (RankCertificate, EchelonBasis<F>) {
        let mut order: Vec<usize> = (0..self.columns.len()).collect();
        order.sort_by_key(|&j| self.columns[j].len());
        let mut basis = EchelonBasis::new(&self.field, self.rows);
        let mut pivots = Vec::new();
        for j in order {
            if basis.is_full() {
                break;
            }
            if basis.insert(&self.columns[j]) {
                pivots.push(j);
            }
        }
        pivots.sort_unstable();
        (
            RankCertificate::new(self.rows, self.columns.len(), self.field.spec(), pivots),
            basis,
        )
    }
}
