use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinalgError, RankCertificate};
use crate::scalar::{Field, FieldSpec, PrimeField, Rationals};

/// A dense matrix over an exact field, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn to_row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Text dump: a header line `rows cols field`, then one line per row
    /// with space-separated exact entries.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.field.spec());
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| self.field.format(v)).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_dump(field: &F, text: &str) -> Result<Self, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(LinalgError::BadDump("missing header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(LinalgError::BadDump(format!("bad header {header:?}")));
        }
        let rows: usize = parts[0].parse().map_err(|_| LinalgError::BadDump(header.into()))?;
        let cols: usize = parts[1].parse().map_err(|_| LinalgError::BadDump(header.into()))?;
        let spec: FieldSpec = parts[2]
            .parse()
            .map_err(|_| LinalgError::BadDump(header.into()))?;
        if spec != field.spec() {
            return Err(LinalgError::FieldMismatch(spec, field.spec()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| LinalgError::BadDump("too few rows".into()))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(LinalgError::BadDump(format!("row {line:?} has wrong length")));
            }
            for e in entries {
                data.push(
                    field
                        .parse(e)
                        .map_err(|_| LinalgError::BadDump(format!("bad entry {e:?}")))?,
                );
            }
        }
        if lines.next().is_some() {
            return Err(LinalgError::BadDump("trailing rows".into()));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }
}

/// Fields with a dense row-echelon routine.
pub trait Eliminate: Field {
    /// Bring `rows` into row-echelon form in place (each pivot row leading
    /// at its pivot column, zeros below). Returns the pivot columns in order.
    fn echelonize(&self, rows: &mut [Vec<Self::Elem>], cols: usize) -> Vec<usize>;
}

impl Eliminate for PrimeField {
    fn echelonize(&self, rows: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
        gauss_echelon(self, rows, cols)
    }
}

fn gauss_echelon<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let (top, rest) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                row[j] = field.sub(&row[j], &field.mul(&factor, &prow[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Eliminate for Rationals {
    /// Fraction-free (Bareiss) forward elimination on the rows scaled to
    /// integers; pivot rows are converted back to rationals at the end.
    fn echelonize(&self, rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
        let mut ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect()
            })
            .collect();

        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == ints.len() {
                break;
            }
            let Some(p) = (r..ints.len()).find(|&i| !ints[i][c].is_zero()) else {
                continue;
            };
            ints.swap(r, p);
            let (top, rest) = ints.split_at_mut(r + 1);
            let prow = &top[r];
            let a = prow[c].clone();
            for row in rest.iter_mut() {
                let b = row[c].clone();
                for j in c..cols {
                    let v = &a * &row[j] - &b * &prow[j];
                    row[j] = v / &prev;
                }
            }
            prev = a;
            pivots.push(c);
            r += 1;
        }
        for (row, irow) in rows.iter_mut().zip(ints) {
            *row = irow.into_iter().map(BigRational::from_integer).collect();
        }
        pivots
    }
}

/// Reduced row-echelon form and a rank certificate.
pub fn rref<F: Eliminate>(m: &ExactMatrix<F>) -> (ExactMatrix<F>, RankCertificate) {
    let field = m.field();
    let mut rows = m.to_row_vecs();
    let pivots = field.echelonize(&mut rows, m.cols);
    // Normalize pivot rows and clear above each pivot.
    for (i, &c) in pivots.iter().enumerate() {
        let inv = field.inv(&rows[i][c]).expect("pivot is nonzero");
        for v in rows[i].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let prow = rows[i].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == i || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..m.cols {
                row[j] = field.sub(&row[j], &field.mul(&factor, &prow[j]));
            }
        }
    }
    for row in rows.iter_mut().skip(pivots.len()) {
        for v in row.iter_mut() {
            *v = field.zero();
        }
    }
    let cert = RankCertificate::new(m.rows, m.cols, field.spec(), pivots);
    let mut out = ExactMatrix::from_rows(field, rows);
    // from_rows on an empty row list loses the column count.
    out.cols = m.cols;
    (out, cert)
}

pub fn rank<F: Eliminate>(m: &ExactMatrix<F>) -> usize {
    let mut rows = m.to_row_vecs();
    m.field().echelonize(&mut rows, m.cols).len()
}

/// Whether the matrix, read as a map from its columns to its rows, is onto.
pub fn is_surjective<F: Eliminate>(m: &ExactMatrix<F>) -> bool {
    rank(m) == m.rows
}

/// Residue of `v` modulo the row space of a matrix in reduced row-echelon
/// form. The residue is zero exactly when `v` lies in the row space.
pub fn row_space_reduce<F: Field>(
    basis_rref: &ExactMatrix<F>,
    v: &[F::Elem],
) -> Result<Vec<F::Elem>, LinalgError> {
    if v.len() != basis_rref.cols {
        return Err(LinalgError::DimensionMismatch {
            expected: basis_rref.cols,
            got: v.len(),
        });
    }
    let field = basis_rref.field();
    let mut out = v.to_vec();
    for r in 0..basis_rref.rows {
        let row = basis_rref.row(r);
        let Some(c) = row.iter().position(|x| !field.is_zero(x)) else {
            continue;
        };
        if row[c] != field.one() {
            return Err(LinalgError::NotReduced);
        }
        let factor = out[c].clone();
        if field.is_zero(&factor) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o = field.sub(o, &field.mul(&factor, x));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn rank_examples() {
        let id = ExactMatrix::identity(&q(), 3);
        assert_eq!(rref(&id).1.rank, 3);
        assert_eq!(rref(&ExactMatrix::zeros(&q(), 3, 4)).1.rank, 0);
        let dep = ExactMatrix::from_i64_rows(&q(), &[vec![1, 2], vec![2, 4]]);
        let (r, cert) = rref(&dep);
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.pivot_cols, vec![0]);
        assert_eq!(r, ExactMatrix::from_i64_rows(&q(), &[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn rref_over_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let m = ExactMatrix::from_i64_rows(&f, &[vec![2, 4, 1], vec![1, 2, 3]]);
        let (r, cert) = rref(&m);
        assert_eq!(cert.pivot_cols, vec![0, 2]);
        assert_eq!(r, ExactMatrix::from_i64_rows(&f, &[vec![1, 2, 0], vec![0, 0, 1]]));
    }

    #[test]
    fn bareiss_rref_matches_rationals() {
        let m = ExactMatrix::from_i64_rows(
            &q(),
            &[vec![2, 1, 3, 4], vec![4, 2, 7, 1], vec![6, 3, 10, 5], vec![0, 1, 1, 1]],
        );
        let (r, cert) = rref(&m);
        assert_eq!(cert.rank, 3);
        assert_eq!(cert.pivot_cols, vec![0, 1, 2]);
        // Row 2 = row 0 + row 1, so the last row of the RREF is zero.
        assert!(r.row(3).iter().all(Zero::is_zero));
        for (i, &c) in cert.pivot_cols.iter().enumerate() {
            assert!(r.get(i, c).is_one());
        }
    }

    #[test]
    fn surjectivity() {
        let m = ExactMatrix::from_i64_rows(&q(), &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(is_surjective(&m));
        let m = ExactMatrix::from_i64_rows(&q(), &[vec![1, 0, 0], vec![0, 0, 0]]);
        assert!(!is_surjective(&m));
    }

    #[test]
    fn residues() {
        let m = ExactMatrix::from_i64_rows(&q(), &[vec![1, 0, 2], vec![0, 1, -1]]);
        let (r, _) = rref(&m);
        let f = q();
        let in_span: Vec<_> = [3, -2, 8].iter().map(|&v| f.from_i64(v)).collect();
        assert!(row_space_reduce(&r, &in_span).unwrap().iter().all(Zero::is_zero));
        let off: Vec<_> = [0, 0, 5].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(row_space_reduce(&r, &off).unwrap(), off);
        let v: Vec<_> = [1, 1, 1].iter().map(|&v| f.from_i64(v)).collect();
        let once = row_space_reduce(&r, &v).unwrap();
        assert_eq!(row_space_reduce(&r, &once).unwrap(), once);
        assert!(matches!(
            row_space_reduce(&r, &v[..2]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dump_round_trip() {
        let m = ExactMatrix::from_rows(
            &q(),
            vec![
                vec![BigRational::new(1.into(), 2.into()), q().from_i64(-3)],
                vec![q().from_i64(0), q().from_i64(7)],
            ],
        );
        let text = m.to_dump();
        assert!(text.starts_with("2 2 qq\n1/2 -3\n"));
        assert_eq!(ExactMatrix::from_dump(&q(), &text).unwrap(), m);
        assert!(ExactMatrix::from_dump(&PrimeField::default(), &text).is_err());
        assert!(ExactMatrix::from_dump(&q(), "2 2 qq\n1 2\n").is_err());
    }
}
