//! Exact verification of ideal-piece containments in bigraded polynomial
//! rings, Lefschetz properties of Artinian complete intersections, and the
//! explicit constructions that certify surjectivity of the infinitesimal
//! period map for quadric surface bundles over the projective plane.

pub mod constructions;
pub mod graded_ideal;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use graded_ideal::{
    build_matrix, contains_full_piece, in_j, quotient_piece_dim, CertificateRecord,
    IdealPieceBasis, MembershipProblem,
};
pub use linalg::{EchelonBasis, ExactMatrix, RankCertificate, SparseColumns};
pub use poly::{Bidegree, Monomial, Polynomial, RingLabel, RingSpec, TypeTuple, Var};
pub use scalar::{Field, FieldSpec, PrimeField, Rationals, Scalar, DEFAULT_PRIME};
