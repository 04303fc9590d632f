use super::SparseVec;
use crate::scalar::Field;

const NO_PIVOT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct PivotRow<E> {
    pivot: u32,
    /// Entries strictly after the pivot; the pivot entry itself is 1.
    tail: Vec<(u32, E)>,
}

/// An incrementally built echelon basis of a subspace of `F^dim`, kept as
/// sparse rows with unit leading entries.
///
/// Vectors are reduced by sweeping positions in increasing order, so after
/// a reduction the vector is zero at every pivot position. That residue is
/// canonical: the non-pivot coordinates form a complement of the span.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    pivot_of: Vec<u32>,
    rows: Vec<PivotRow<F::Elem>>,
    scratch: Vec<F::Elem>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Self {
            field: field.clone(),
            dim,
            pivot_of: vec![NO_PIVOT; dim],
            rows: Vec::new(),
            scratch: vec![field.zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn is_pivot(&self, pos: usize) -> bool {
        self.pivot_of[pos] != NO_PIVOT
    }

    /// Positions without a pivot, ascending.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| !self.is_pivot(i)).collect()
    }

    /// Pivot positions in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot as usize).collect()
    }

    fn sweep(&self, acc: &mut [F::Elem], start: usize) {
        let f = &self.field;
        for i in start..self.dim {
            if f.is_zero(&acc[i]) {
                continue;
            }
            let p = self.pivot_of[i];
            if p == NO_PIVOT {
                continue;
            }
            let c = acc[i].clone();
            f.sub_scaled(acc, &c, &self.rows[p as usize].tail);
            acc[i] = f.zero();
        }
    }

    /// Add `v` to the span. Returns whether the rank grew.
    ///
    /// # Panics
    /// If an index of `v` is out of range.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        if v.is_empty() {
            return false;
        }
        let mut acc = std::mem::take(&mut self.scratch);
        let mut start = self.dim;
        for (j, x) in v {
            let slot = &mut acc[*j as usize];
            *slot = self.field.add(slot, x);
            start = start.min(*j as usize);
        }
        self.sweep(&mut acc, start);
        let f = &self.field;
        let lead = (start..self.dim).find(|&i| !f.is_zero(&acc[i]));
        let grew = if let Some(lead) = lead {
            let inv = f.inv(&acc[lead]).expect("nonzero lead");
            let mut tail = Vec::new();
            for (i, slot) in acc.iter_mut().enumerate().skip(lead + 1) {
                if !f.is_zero(slot) {
                    tail.push((i as u32, f.mul(slot, &inv)));
                    *slot = f.zero();
                }
            }
            acc[lead] = f.zero();
            self.pivot_of[lead] = self.rows.len() as u32;
            self.rows.push(PivotRow {
                pivot: lead as u32,
                tail,
            });
            true
        } else {
            false
        };
        self.scratch = acc;
        grew
    }

    /// Canonical residue of a sparse vector modulo the span.
    pub fn residue(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.dim];
        let mut start = self.dim;
        for (j, x) in v {
            let slot = &mut acc[*j as usize];
            *slot = self.field.add(slot, x);
            start = start.min(*j as usize);
        }
        self.sweep(&mut acc, start);
        acc.into_iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .map(|(i, x)| (i as u32, x))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.residue(v).is_empty()
    }
}
