#![allow(dead_code)]

use std::sync::Arc;

use gradus_core::poly::power_of_linear;
use gradus_core::{Bidegree, Field, Monomial, Polynomial, PrimeField, RingSpec};
use rand::Rng;

/// A random form of degree `e` on the base variables of `ring`. With
/// `density < 1` each coefficient is zero with probability `1 - density`.
pub fn random_form<R: Rng>(ring: &Arc<RingSpec>, field: &PrimeField, e: i64, density: f64, rng: &mut R) -> Polynomial<PrimeField> {
    let terms: Vec<(Monomial, u64)> = ring
        .basis(Bidegree::new(e, 0))
        .into_iter()
        .filter_map(|m| rng.gen_bool(density).then(|| (m, field.random(rng))))
        .collect();
    Polynomial::from_terms(ring, field, terms)
}

/// `(c . x)^e` for a random small-integer vector `c`.
pub fn random_linear_power<R: Rng>(ring: &Arc<RingSpec>, field: &PrimeField, e: u32, rng: &mut R) -> Polynomial<PrimeField> {
    loop {
        let c: Vec<i64> = (0..ring.num_base()).map(|_| rng.gen_range(-4..=4)).collect();
        if c.iter().any(|&v| v != 0) {
            let c: Vec<u64> = c.into_iter().map(|v| field.from_i64(v)).collect();
            return power_of_linear(ring, field, &c, e).unwrap();
        }
    }
}

/// Rank of a dense matrix mod `p` by textbook Gaussian elimination.
pub fn naive_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| {
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let iv = inv(m[rank][c]);
        let pivot: Vec<u64> = m[rank].iter().map(|&v| v * iv % p).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Brute-force containment of `ring(target)` in `(generators)`: for every
/// monomial of the target piece, solve for it as a combination of the
/// products `generator * monomial`.
pub fn brute_force_contains(ring: &Arc<RingSpec>, field: &PrimeField, generators: &[Polynomial<PrimeField>], target: Bidegree) -> bool {
    let p = field.modulus();
    let targets = ring.basis(target);
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for g in generators {
        let Some(deg) = g.bidegree() else { continue };
        for m in ring.basis(target - deg) {
            let prod = g.mul_monomial(&m);
            columns.push(targets.iter().map(|t| prod.coefficient(t)).collect());
        }
    }
    let rows_of = |cols: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..targets.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    };
    let base_rank = naive_rank(rows_of(&columns), p);
    targets.iter().enumerate().all(|(i, _)| {
        let mut aug = columns.clone();
        let mut e = vec![0u64; targets.len()];
        e[i] = 1;
        aug.push(e);
        naive_rank(rows_of(&aug), p) == base_rank
    })
}
