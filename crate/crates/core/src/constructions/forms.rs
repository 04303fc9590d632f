use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{power_of_linear, Bidegree, PolyError, Polynomial, RingSpec, TypeTuple, Var};
use crate::scalar::Field;

/// Which polynomials to pick for `f` and `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Fixed small-integer forms, identical on every run.
    Explicit,
    /// Random coefficients from a seeded generator.
    Random(u64),
}

/// The component choices for `f_j` used by the individual steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FVariant {
    /// Sums of `d_j`-th powers of three independent linear forms, a
    /// different triple for every `j`. Used for the end-to-end certificate
    /// and for the steps that need no special choice.
    General,
    /// `f0 = (x0+x1)^d0 + x2^d0`, `f1 = (x0-x1)^d1 + x2^d1`; `f2, f3` general.
    Step2,
    /// `f0 = x0^d0`, `f1 = x0^d1`, `f2 = x0^d2 + x1^d2`, `f3 = x0^d3 + x2^d3`.
    Step3,
    /// The Fermat curve `x0^dj + x1^dj + x2^dj` for every `j`.
    Step4,
}

/// Linear forms whose powers make up the general `f_j`: the points
/// `(1, a, a^2)` of the conic for `a = 4j+1, ..., 4j+4`, so any three of the
/// sixteen forms are independent.
const F_FORMS: [[[i64; 3]; 4]; 4] = {
    let mut out = [[[0i64; 3]; 4]; 4];
    let mut j = 0;
    while j < 4 {
        let mut k = 0;
        while k < 4 {
            let a = (4 * j + k + 1) as i64;
            out[j][k] = [1, a, a * a];
            k += 1;
        }
        j += 1;
    }
    out
};

/// Linear forms for the general `g_ij`, indexed like [`G_INDICES`]. Each
/// component is the sum of the powers of two of them.
const G_FORMS: [[[i64; 3]; 2]; 8] = [
    [[1, 2, 3], [2, -1, 1]],
    [[3, 1, 2], [1, 1, -2]],
    [[2, 3, 1], [1, -3, 2]],
    [[1, -2, 1], [3, 2, -1]],
    [[1, 1, -3], [2, 1, 3]],
    [[2, -1, -1], [1, 3, 1]],
    [[1, 3, -2], [3, -1, 2]],
    [[3, -2, 1], [1, 2, 2]],
];

/// Index pairs of the components of `g`: `g11`, `g33` and `g_ij` for `i < j`.
pub const G_INDICES: [(usize, usize); 8] = [(1, 1), (3, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn linear<F: Field>(ring: &Arc<RingSpec>, field: &F, c: &[i64], e: i64) -> Polynomial<F> {
    if e < 0 {
        return Polynomial::zero(ring, field);
    }
    let c: Vec<F::Elem> = c.iter().map(|&v| field.from_i64(v)).collect();
    power_of_linear(ring, field, &c, e as u32).expect("exponent below the characteristic")
}

pub(crate) fn x_pow<F: Field>(ring: &Arc<RingSpec>, field: &F, k: usize, e: i64) -> Polynomial<F> {
    let mut c = [0i64; 3];
    c[k] = 1;
    linear(ring, field, &c, e)
}

/// `x0^e + x1^e + x2^e`, or `1` when `e = 0`.
pub(crate) fn fermat<F: Field>(ring: &Arc<RingSpec>, field: &F, e: i64) -> Polynomial<F> {
    if e == 0 {
        return Polynomial::one(ring, field);
    }
    (0..3).fold(Polynomial::zero(ring, field), |acc, k| &acc + &x_pow(ring, field, k, e))
}

/// `sum_k l_k^e`; `1` for `e = 0` and `0` for `e < 0`.
fn power_sum<F: Field>(ring: &Arc<RingSpec>, field: &F, forms: &[[i64; 3]], e: i64) -> Polynomial<F> {
    if e == 0 {
        return Polynomial::one(ring, field);
    }
    forms
        .iter()
        .fold(Polynomial::zero(ring, field), |acc, c| &acc + &linear(ring, field, c, e))
}

/// A random element of `P_2(e)` inside `ring`, zero for `e < 0`.
pub(crate) fn random_base<F: Field, R: rand::Rng>(ring: &Arc<RingSpec>, field: &F, e: i64, rng: &mut R) -> Polynomial<F> {
    let terms = ring
        .basis(Bidegree::new(e, 0))
        .into_iter()
        .map(|m| (m, field.random(rng)))
        .collect::<Vec<_>>();
    Polynomial::from_terms(ring, field, terms)
}

/// `f = f0 y0^2 + f1 y1^2 + f2 y2^2 + f3 y3^2` with `f_j` in `S(d_j, 0)`.
#[derive(Debug, Clone)]
pub struct QuadricForm<F: Field> {
    ty: TypeTuple,
    ring: Arc<RingSpec>,
    field: F,
    components: [Polynomial<F>; 4],
    f: Polynomial<F>,
}

impl<F: Field> QuadricForm<F> {
    /// # Panics
    /// If a component is not in `S(d_j, 0)`.
    pub fn from_components(ty: &TypeTuple, ring: &Arc<RingSpec>, field: &F, components: [Polynomial<F>; 4]) -> Self {
        let mut f = Polynomial::zero(ring, field);
        for (j, c) in components.iter().enumerate() {
            assert!(
                c.is_zero() || c.bidegree() == Some(Bidegree::new(ty.dj(j), 0)),
                "f{j} has the wrong degree"
            );
            let y = Polynomial::var(ring, field, Var::Fiber(j));
            f = &f + &(c * &(&y * &y));
        }
        Self {
            ty: *ty,
            ring: ring.clone(),
            field: field.clone(),
            components,
            f,
        }
    }

    pub fn type_tuple(&self) -> &TypeTuple {
        &self.ty
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn component(&self, j: usize) -> &Polynomial<F> {
        &self.components[j]
    }

    pub fn components(&self) -> &[Polynomial<F>; 4] {
        &self.components
    }

    /// Replace one component.
    pub fn with_component(&self, j: usize, c: Polynomial<F>) -> Self {
        let mut comps = self.components.clone();
        comps[j] = c;
        Self::from_components(&self.ty, &self.ring, &self.field, comps)
    }

    /// The seven partial derivatives `df/dx0..dx2, df/dy0..dy3`.
    pub fn partials(&self) -> Result<Vec<Polynomial<F>>, PolyError> {
        self.ring.vars().map(|v| self.f.partial(v)).collect()
    }

    /// `d f_j / d x_k`.
    pub fn component_partial(&self, j: usize, k: usize) -> Polynomial<F> {
        self.components[j]
            .partial(Var::Base(k))
            .expect("degrees are below the characteristic")
    }
}

/// Build `f` for one of the documented choices.
pub fn build_explicit_f<F: Field>(ty: &TypeTuple, field: &F, variant: FVariant) -> QuadricForm<F> {
    let ring = Arc::new(RingSpec::s(ty));
    let d = |j: usize| ty.dj(j);
    let unit_or = |j: usize, p: Polynomial<F>| if d(j) == 0 { Polynomial::one(&ring, field) } else { p };
    let general = |j: usize| power_sum(&ring, field, &F_FORMS[j], d(j));
    let comps: [Polynomial<F>; 4] = match variant {
        FVariant::General => [general(0), general(1), general(2), general(3)],
        FVariant::Step2 => [
            unit_or(0, &linear(&ring, field, &[1, 1, 0], d(0)) + &x_pow(&ring, field, 2, d(0))),
            unit_or(1, &linear(&ring, field, &[1, -1, 0], d(1)) + &x_pow(&ring, field, 2, d(1))),
            general(2),
            general(3),
        ],
        FVariant::Step3 => [
            unit_or(0, x_pow(&ring, field, 0, d(0))),
            unit_or(1, x_pow(&ring, field, 0, d(1))),
            unit_or(2, &x_pow(&ring, field, 0, d(2)) + &x_pow(&ring, field, 1, d(2))),
            unit_or(3, &x_pow(&ring, field, 0, d(3)) + &x_pow(&ring, field, 2, d(3))),
        ],
        FVariant::Step4 => [0, 1, 2, 3].map(|j| fermat(&ring, field, d(j))),
    };
    QuadricForm::from_components(ty, &ring, field, comps)
}

/// Random `f_j` of the right degrees.
pub fn build_random_f<F: Field>(ty: &TypeTuple, field: &F, seed: u64) -> QuadricForm<F> {
    let ring = Arc::new(RingSpec::s(ty));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = [0, 1, 2, 3].map(|j| random_base(&ring, field, ty.dj(j), &mut rng));
    QuadricForm::from_components(ty, &ring, field, comps)
}

/// `g = g11 y1^2 + g33 y3^2 + sum_{i<j} g_ij y_i y_j`. There is no `g00`
/// or `g22`.
#[derive(Debug, Clone)]
pub struct GForm<F: Field> {
    ty: TypeTuple,
    ring: Arc<RingSpec>,
    field: F,
    components: BTreeMap<(usize, usize), Polynomial<F>>,
    g: Polynomial<F>,
}

/// Degree of `g_ij`, `t - d + r_i + r_j`.
pub fn g_degree(ty: &TypeTuple, i: usize, j: usize) -> i64 {
    ty.t() - ty.shift() + ty.rj(i) + ty.rj(j)
}

impl<F: Field> GForm<F> {
    /// Components missing from `components` are zero.
    ///
    /// # Panics
    /// On an index pair outside [`G_INDICES`] or a component of the wrong
    /// degree.
    pub fn from_components(
        ty: &TypeTuple,
        ring: &Arc<RingSpec>,
        field: &F,
        components: BTreeMap<(usize, usize), Polynomial<F>>,
    ) -> Self {
        let mut g = Polynomial::zero(ring, field);
        for (&(i, j), c) in &components {
            assert!(G_INDICES.contains(&(i, j)), "g{i}{j} is not a component of g");
            assert!(
                c.is_zero() || c.bidegree() == Some(Bidegree::new(g_degree(ty, i, j), 0)),
                "g{i}{j} has the wrong degree"
            );
            let yi = Polynomial::var(ring, field, Var::Fiber(i));
            let yj = Polynomial::var(ring, field, Var::Fiber(j));
            g = &g + &(c * &(&yi * &yj));
        }
        Self {
            ty: *ty,
            ring: ring.clone(),
            field: field.clone(),
            components,
            g,
        }
    }

    pub fn g(&self) -> &Polynomial<F> {
        &self.g
    }

    pub fn component(&self, i: usize, j: usize) -> Polynomial<F> {
        let key = (i.min(j), i.max(j));
        self.components
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring, &self.field))
    }

    /// The same form with one component set to zero.
    pub fn without(&self, i: usize, j: usize) -> Self {
        let mut comps = self.components.clone();
        comps.remove(&(i.min(j), i.max(j)));
        Self::from_components(&self.ty, &self.ring, &self.field, comps)
    }

    /// The same form with one component replaced.
    pub fn with(&self, i: usize, j: usize, c: Polynomial<F>) -> Self {
        let mut comps = self.components.clone();
        comps.insert((i.min(j), i.max(j)), c);
        Self::from_components(&self.ty, &self.ring, &self.field, comps)
    }
}

/// The fixed general `g`: every component a sum of powers of two linear forms.
pub fn build_general_g<F: Field>(ty: &TypeTuple, field: &F) -> GForm<F> {
    let ring = Arc::new(RingSpec::s(ty));
    let comps = G_INDICES
        .iter()
        .zip(G_FORMS)
        .map(|(&(i, j), forms)| ((i, j), power_sum(&ring, field, &forms, g_degree(ty, i, j))))
        .collect();
    GForm::from_components(ty, &ring, field, comps)
}

/// Random components of the right degrees.
pub fn build_random_g<F: Field>(ty: &TypeTuple, field: &F, seed: u64) -> GForm<F> {
    let ring = Arc::new(RingSpec::s(ty));
    // Offset the stream so that f and g never share coefficients.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let comps = G_INDICES
        .iter()
        .map(|&(i, j)| ((i, j), random_base(&ring, field, g_degree(ty, i, j), &mut rng)))
        .collect();
    GForm::from_components(ty, &ring, field, comps)
}

/// `g` with the special components of the third step: `g11 = x2^e`,
/// `g12 = nu^e`, `g23 = mu^e`, `g33 = mu^e`. The remaining components come
/// from `rest`.
pub fn build_explicit_g<F: Field>(ty: &TypeTuple, field: &F, mu: &[i64; 3], nu: &[i64; 3], rest: &GForm<F>) -> GForm<F> {
    let ring = rest.ring.clone();
    let e = |i, j| g_degree(ty, i, j);
    rest.with(1, 1, x_pow(&ring, field, 2, e(1, 1)))
        .with(1, 2, linear(&ring, field, nu, e(1, 2)))
        .with(2, 3, linear(&ring, field, mu, e(2, 3)))
        .with(3, 3, linear(&ring, field, mu, e(3, 3)))
}

/// `f` and `g` for a mode.
pub fn build_forms<F: Field>(ty: &TypeTuple, field: &F, mode: Mode) -> (QuadricForm<F>, GForm<F>) {
    match mode {
        Mode::Explicit => (
            build_explicit_f(ty, field, FVariant::General),
            build_general_g(ty, field),
        ),
        Mode::Random(seed) => (build_random_f(ty, field, seed), build_random_g(ty, field, seed)),
    }
}

/// A minor of the `3 x 4` matrix `(d f_j / d x_k)`, or of the `2 x 3`
/// matrix over `k in {0,1}`, `j in {1,2,3}` when `d0 = 0`.
#[derive(Debug, Clone)]
pub struct MinorMatrix<F: Field> {
    pub j: usize,
    pub columns: Vec<usize>,
    pub entries: Vec<Vec<Polynomial<F>>>,
    pub det: Polynomial<F>,
}

fn det<F: Field>(m: &[Vec<Polynomial<F>>], ring: &Arc<RingSpec>, field: &F) -> Polynomial<F> {
    match m.len() {
        0 => Polynomial::one(ring, field),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring, field);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Polynomial<F>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][c] * &det(&sub, ring, field);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// The minor `A_j` leaving out column `j`. With `d0 = 0` only `j` in
/// `{1,2,3}` is defined and `None` is returned for `j = 0`.
pub fn minor_det<F: Field>(form: &QuadricForm<F>, j: usize) -> Option<MinorMatrix<F>> {
    let small = form.ty.dj(0) == 0;
    if small && j == 0 {
        return None;
    }
    let (rows, cols): (Vec<usize>, Vec<usize>) = if small {
        (vec![0, 1], (1..4).filter(|&c| c != j).collect())
    } else {
        (vec![0, 1, 2], (0..4).filter(|&c| c != j).collect())
    };
    let entries: Vec<Vec<Polynomial<F>>> = rows
        .iter()
        .map(|&k| cols.iter().map(|&c| form.component_partial(c, k)).collect())
        .collect();
    let det = det(&entries, &form.ring, &form.field);
    Some(MinorMatrix {
        j,
        columns: cols,
        entries,
        det,
    })
}

/// Expected degree of `det A_j`.
pub fn minor_degree(ty: &TypeTuple, j: usize) -> i64 {
    let total: i64 = (0..4).map(|k| ty.dj(k)).sum();
    if ty.dj(0) > 0 {
        total - ty.dj(j) - 3
    } else {
        total - ty.dj(j) - 2
    }
}
