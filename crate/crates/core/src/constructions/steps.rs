//! The four-step proof that `J = S`, replayed with rank certificates.
//!
//! Classes `y_a y_b y_c` and `y_a^3 y_b` only need the Jacobian ideal of
//! `f`, so their membership in `J` is checked against the ideal generated
//! by the partials alone. Classes `y_a^2 y_b^2` and `y_j^4` need `g`; for
//! those the auxiliary containments with the special choices (the ring `U`
//! claim, the transition claims and the fourth-step containments) carry the
//! real content, and membership is checked against the full ideal.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::forms::{build_explicit_f, build_forms, fermat, g_degree, linear, minor_det, x_pow, FVariant, GForm, Mode, QuadricForm};
use super::{main_generators, ConstructionError};
use crate::graded_ideal::{contains_full_piece, j_witness, IdealPieceBasis, MembershipProblem};
use crate::lefschetz::{find_sl_element, CIQuotient};
use crate::linalg::RankCertificate;
use crate::poly::{Bidegree, Polynomial, RingLabel, RingSpec, TypeTuple, Var};
use crate::scalar::Field;

/// An auxiliary containment `ring(target) ⊂ (generators)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub name: String,
    pub target: Bidegree,
    /// `None` when the claim holds for a trivial reason, given in `note`.
    pub certificate: Option<RankCertificate>,
    pub note: String,
    pub holds: bool,
}

impl ClaimRecord {
    fn certified(name: String, target: Bidegree, cert: RankCertificate, note: String) -> Self {
        Self {
            name,
            target,
            holds: cert.full_target_rank,
            certificate: Some(cert),
            note,
        }
    }

    fn trivial(name: String, target: Bidegree, note: &str) -> Self {
        Self {
            name,
            target,
            certificate: None,
            note: note.into(),
            holds: true,
        }
    }
}

/// An integer inequality `lhs >= rhs` from the degree bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl InequalityRecord {
    fn new(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

/// A move `{t0,t1} -> {t0,t2}` between index pairs, allowed when `t3 < t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub tau: [usize; 4],
}

impl Transition {
    pub fn from_pair(&self) -> (usize, usize) {
        sorted(self.tau[0], self.tau[1])
    }

    pub fn to_pair(&self) -> (usize, usize) {
        sorted(self.tau[0], self.tau[2])
    }
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// The eight transitions of the diagram, as permutations `tau`.
pub fn transition_edges() -> Vec<Transition> {
    [
        [1, 0, 3, 2],
        [0, 1, 3, 2],
        [3, 1, 2, 0],
        [1, 3, 2, 0],
        [3, 0, 2, 1],
        [2, 3, 1, 0],
        [0, 2, 3, 1],
        [2, 0, 3, 1],
    ]
    .into_iter()
    .map(|tau| Transition { tau })
    .collect()
}

/// A shortest path of transitions from every pair to `{1,2}`; `None` for a
/// pair that cannot reach it.
pub fn transition_paths() -> BTreeMap<(usize, usize), Option<Vec<Transition>>> {
    let edges = transition_edges();
    let goal = (1, 2);
    let mut out = BTreeMap::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let start = (a, b);
            let mut prev: BTreeMap<(usize, usize), Transition> = BTreeMap::new();
            let mut queue = VecDeque::from([start]);
            let mut seen = vec![start];
            while let Some(p) = queue.pop_front() {
                for e in edges.iter().filter(|e| e.from_pair() == p) {
                    let q = e.to_pair();
                    if !seen.contains(&q) {
                        seen.push(q);
                        prev.insert(q, *e);
                        queue.push_back(q);
                    }
                }
            }
            let path = if start == goal {
                Some(Vec::new())
            } else if seen.contains(&goal) {
                let mut path = Vec::new();
                let mut cur = goal;
                while cur != start {
                    let e = prev[&cur];
                    path.push(e);
                    cur = e.from_pair();
                }
                path.reverse();
                Some(path)
            } else {
                None
            };
            out.insert(start, path);
        }
    }
    out
}

/// Result of checking the sign in `det(A_j) y_i^2 ≡ ε det(A_i) y_j^2 (mod J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignOutcome {
    Unique(i8),
    /// Both signs work, which happens when both sides vanish modulo `J`.
    Either,
}

/// Determine ε by testing both signs against the Jacobian ideal piece at
/// `(t,4)`.
pub fn det_congruence_sign<F: Field>(
    form: &QuadricForm<F>,
    i: usize,
    j: usize,
    jacobian_piece: &IdealPieceBasis<F>,
) -> Result<SignOutcome, ConstructionError> {
    if i == j {
        return Ok(SignOutcome::Unique(1));
    }
    let (Some(ai), Some(aj)) = (minor_det(form, i), minor_det(form, j)) else {
        // d0 = 0 and one index is 0: both sides are multiples of y0 ∈ J.
        return Ok(SignOutcome::Either);
    };
    let ring = form.ring();
    let field = form.field();
    let yi = Polynomial::var(ring, field, Var::Fiber(i));
    let yj = Polynomial::var(ring, field, Var::Fiber(j));
    let lhs = &aj.det * &(&yi * &yi);
    let rhs = &ai.det * &(&yj * &yj);
    let plus = j_witness(&(&lhs - &rhs), jacobian_piece)?.is_none();
    let minus = j_witness(&(&lhs + &rhs), jacobian_piece)?.is_none();
    match (plus, minus) {
        (true, true) => Ok(SignOutcome::Either),
        (true, false) => Ok(SignOutcome::Unique(1)),
        (false, true) => Ok(SignOutcome::Unique(-1)),
        (false, false) => Err(ConstructionError::NeitherSign(i, j)),
    }
}

/// How the monomials of `S(t,4)` split over the four classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub total: usize,
    /// Monomials divisible by `y_a y_b y_c`, `y_a^3 y_b`, `y_a^2 y_b^2`,
    /// `y_a^4`, in that order. A monomial is counted in the first class
    /// that divides it.
    pub per_step: [usize; 4],
    pub unmatched: usize,
}

/// Match every monomial of `S(t,4)` against the four classes.
pub fn coverage(ty: &TypeTuple) -> CoverageReport {
    let ring = RingSpec::s(ty);
    let mut per_step = [0usize; 4];
    let mut unmatched = 0;
    let basis = ring.basis(ty.target());
    for m in &basis {
        let b = m.fiber_exponents();
        let nonzero = b.iter().filter(|&&e| e > 0).count();
        let twos = b.iter().filter(|&&e| e == 2).count();
        let step = if nonzero >= 3 {
            Some(0)
        } else if b.contains(&3) {
            Some(1)
        } else if twos == 2 {
            Some(2)
        } else if b.contains(&4) {
            Some(3)
        } else {
            None
        };
        match step {
            Some(s) => per_step[s] += 1,
            None => unmatched += 1,
        }
    }
    CoverageReport {
        total: basis.len(),
        per_step,
        unmatched,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: u8,
    pub sigma: [usize; 4],
    /// The monomial class, e.g. `y0*y1*y2`.
    pub class: String,
    pub in_j: bool,
    /// A complementary monomial whose multiple escapes the ideal.
    pub witness: Option<String>,
    pub claims: Vec<ClaimRecord>,
    pub inequalities: Vec<InequalityRecord>,
    pub transitions: Vec<Transition>,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.in_j && self.claims.iter().all(|c| c.holds) && self.inequalities.iter().all(|i| i.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignRecord {
    pub i: usize,
    pub j: usize,
    pub outcome: SignOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub type_label: String,
    pub steps: Vec<StepReport>,
    pub signs: Vec<SignRecord>,
    pub coverage: CoverageReport,
    pub every_pair_reaches_goal: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.every_pair_reaches_goal && self.coverage.unmatched == 0 && self.steps.iter().all(StepReport::passed)
    }
}

fn base_ring() -> Arc<RingSpec> {
    Arc::new(RingSpec::p(2))
}

/// A strong Lefschetz element for three forms of `S(*, 0)`. When one of
/// them is a nonzero constant the ideal is the unit ideal, any linear form
/// will do, and the coordinate sum is returned.
fn sl_for<F: Field>(gens: &[Polynomial<F>], field: &F) -> Result<[i64; 3], ConstructionError> {
    if gens.iter().any(|g| g.bidegree() == Some(Bidegree::new(0, 0))) {
        return Ok([1, 1, 1]);
    }
    let p2 = base_ring();
    let moved = gens.iter().map(|g| g.embed_base(&p2)).collect::<Result<Vec<_>, _>>()?;
    let label = moved.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
    let q = CIQuotient::certify(&p2, field, moved)?;
    let (c, _) = find_sl_element(&q)?.ok_or(ConstructionError::NoSlElement(label))?;
    Ok([c[0], c[1], c[2]])
}

fn name_monomial(exps: &[(usize, u32)]) -> String {
    exps.iter()
        .map(|&(j, e)| if e == 1 { format!("y{j}") } else { format!("y{j}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// The forms and ideal pieces shared by all step checks for one type.
pub struct StepContext<F: Field> {
    ty: TypeTuple,
    field: F,
    ring: Arc<RingSpec>,
    form: QuadricForm<F>,
    g: GForm<F>,
    jacobian: IdealPieceBasis<F>,
    full: IdealPieceBasis<F>,
}

impl<F: Field> StepContext<F> {
    pub fn new(ty: &TypeTuple, field: &F, mode: Mode) -> Result<Self, ConstructionError> {
        let (form, g) = build_forms(ty, field, mode);
        let ring = form.ring().clone();
        let partials = form.partials()?;
        let jac = MembershipProblem::new(&ring, field, partials, ty.target())?;
        let full = MembershipProblem::new(&ring, field, main_generators(&form, &g)?, ty.target())?;
        Ok(Self {
            ty: *ty,
            field: field.clone(),
            ring,
            form,
            g,
            jacobian: IdealPieceBasis::build(&jac),
            full: IdealPieceBasis::build(&full),
        })
    }

    pub fn form(&self) -> &QuadricForm<F> {
        &self.form
    }

    pub fn g(&self) -> &GForm<F> {
        &self.g
    }

    pub fn jacobian_piece(&self) -> &IdealPieceBasis<F> {
        &self.jacobian
    }

    pub fn full_piece(&self) -> &IdealPieceBasis<F> {
        &self.full
    }

    fn y_monomial(&self, exps: &[(usize, u32)]) -> Polynomial<F> {
        let mut p = Polynomial::one(&self.ring, &self.field);
        for &(j, e) in exps {
            p = &p * &Polynomial::var(&self.ring, &self.field, Var::Fiber(j)).pow(e);
        }
        p
    }

    fn membership(&self, r: &Polynomial<F>, piece: &IdealPieceBasis<F>) -> Result<(bool, Option<String>), ConstructionError> {
        Ok(match j_witness(r, piece)? {
            None => (true, None),
            Some((m, size)) => (false, Some(format!("{} (residue support {size})", self.ring.format_monomial(&m)))),
        })
    }

    fn claim(
        &self,
        name: String,
        ring: &Arc<RingSpec>,
        gens: Vec<Polynomial<F>>,
        target: Bidegree,
        note: String,
    ) -> Result<ClaimRecord, ConstructionError> {
        let prob = MembershipProblem::new(ring, &self.field, gens, target)?;
        Ok(ClaimRecord::certified(name, target, contains_full_piece(&prob), note))
    }

    fn d(&self, j: usize) -> i64 {
        self.ty.dj(j)
    }

    fn r(&self, j: usize) -> i64 {
        self.ty.rj(j)
    }

    /// The sign ε for the pair `(i, j)`, falling back to `+1` when both
    /// signs work.
    pub fn sign(&self, i: usize, j: usize) -> Result<i8, ConstructionError> {
        Ok(match det_congruence_sign(&self.form, i, j, &self.jacobian)? {
            SignOutcome::Unique(s) => s,
            SignOutcome::Either => 1,
        })
    }

    /// Verify one step for the permutation `sigma`.
    pub fn verify_step(&self, step: u8, sigma: [usize; 4]) -> Result<StepReport, ConstructionError> {
        match step {
            1 => self.step1(sigma),
            2 => self.step2(sigma),
            3 => self.step3(sigma),
            4 => self.step4(sigma),
            _ => panic!("steps are numbered 1 to 4"),
        }
    }

    fn report(&self, step: u8, sigma: [usize; 4], exps: &[(usize, u32)], piece: &IdealPieceBasis<F>) -> Result<StepReport, ConstructionError> {
        let (in_j, witness) = self.membership(&self.y_monomial(exps), piece)?;
        Ok(StepReport {
            step,
            sigma,
            class: name_monomial(exps),
            in_j,
            witness,
            claims: Vec::new(),
            inequalities: Vec::new(),
            transitions: Vec::new(),
        })
    }

    fn step1(&self, sigma: [usize; 4]) -> Result<StepReport, ConstructionError> {
        let [a, b, c, _] = sigma;
        let mut rep = self.report(1, sigma, &[(a, 1), (b, 1), (c, 1)], &self.jacobian)?;
        let (t, ty) = (self.ty.t(), &self.ty);
        let target = Bidegree::new(self.d(a) + self.d(b) + self.d(c) - 2, 0);
        let name = format!("S({},0) in (f{a},f{b},f{c})", target.m);
        rep.claims.push(if [a, b, c].iter().any(|&k| self.d(k) == 0) {
            ClaimRecord::trivial(name, target, "a component is a unit")
        } else {
            let gens = [a, b, c].map(|k| self.form.component(k).clone()).to_vec();
            self.claim(name, &self.ring, gens, target, String::new())?
        });
        for j in 0..4 {
            if ty.dj(j) == 0 {
                let (ok, _) = self.membership(&self.y_monomial(&[(j, 1)]), &self.jacobian)?;
                rep.claims.push(ClaimRecord {
                    name: format!("y{j} in J"),
                    target: ty.target(),
                    certificate: None,
                    note: "d_j = 0".into(),
                    holds: ok,
                });
                continue;
            }
            rep.inequalities.push(InequalityRecord::new(
                format!("t+r{a}+r{b}+r{c}+r{j} >= d{a}+d{b}+d{c}-2"),
                t + self.r(a) + self.r(b) + self.r(c) + self.r(j),
                target.m,
            ));
        }
        Ok(rep)
    }

    fn step2(&self, sigma: [usize; 4]) -> Result<StepReport, ConstructionError> {
        let [a, b, _, _] = sigma;
        let mut rep = self.report(2, sigma, &[(a, 3), (b, 1)], &self.jacobian)?;
        rep.claims.push(self.claim_t(a, b)?);
        // The congruence (df_a/dx_k y_a^2 + df_b/dx_k y_b^2) y_a y_b ≡ 0 in
        // both of its displayed forms.
        for k in 0..2 {
            let lhs = &(&self.form.component_partial(a, k) * &self.y_monomial(&[(a, 3), (b, 1)]))
                + &(&self.form.component_partial(b, k) * &self.y_monomial(&[(a, 1), (b, 3)]));
            let (ok, witness) = self.membership(&lhs, &self.jacobian)?;
            rep.claims.push(ClaimRecord {
                name: format!("(df{a}/dx{k} y{a}^2 + df{b}/dx{k} y{b}^2) y{a} y{b} in J"),
                target: self.ty.target(),
                certificate: None,
                note: witness.unwrap_or_default(),
                holds: ok,
            });
        }
        rep.inequalities.push(InequalityRecord::new(
            format!("t+3r{a}+r{b} >= 2d{a}+d{b}-3"),
            self.ty.t() + 3 * self.r(a) + self.r(b),
            2 * self.d(a) + self.d(b) - 3,
        ));
        Ok(rep)
    }

    /// `T(d_a+d_b-3, 1) ⊂ (f_a, f_b, D_0, D_1)` with
    /// `D_k = df_a/dx_k z_a + df_b/dx_k z_b` and the second-step choices.
    fn claim_t(&self, a: usize, b: usize) -> Result<ClaimRecord, ConstructionError> {
        let (da, db) = (self.d(a), self.d(b));
        let target = Bidegree::new(da + db - 3, 1);
        let name = format!("T({},1) in (f{a},f{b},D0,D1)", target.m);
        if da == 0 || db == 0 {
            return Ok(ClaimRecord::trivial(name, target, "a component is a unit"));
        }
        let t_ring = Arc::new(RingSpec::new(
            3,
            vec![da, db],
            vec![format!("z{a}"), format!("z{b}")],
            RingLabel::T,
        ));
        let f = &self.field;
        let fa = &linear(&t_ring, f, &[1, 1, 0], da) + &x_pow(&t_ring, f, 2, da);
        let fb = &linear(&t_ring, f, &[1, -1, 0], db) + &x_pow(&t_ring, f, 2, db);
        let za = Polynomial::var(&t_ring, f, Var::Fiber(0));
        let zb = Polynomial::var(&t_ring, f, Var::Fiber(1));
        let mut gens = vec![fa.clone(), fb.clone()];
        for k in 0..2 {
            let dk = |p: &Polynomial<F>| p.partial(Var::Base(k)).expect("degree below characteristic");
            gens.push(&(&dk(&fa) * &za) + &(&dk(&fb) * &zb));
        }
        self.claim(name, &t_ring, gens, target, String::new())
    }

    fn step3(&self, sigma: [usize; 4]) -> Result<StepReport, ConstructionError> {
        let (a, b) = sorted(sigma[0], sigma[1]);
        let mut rep = self.report(3, sigma, &[(a, 2), (b, 2)], &self.full)?;
        let paths = transition_paths();
        let path = paths[&(a, b)].clone().unwrap_or_default();
        for tr in &path {
            rep.claims.push(self.transition_claim(tr)?);
            let [_, _, t2, t3] = tr.tau;
            rep.inequalities.push(InequalityRecord::new(format!("r{t2} >= r{t3}-1"), self.r(t2), self.r(t3) - 1));
        }
        rep.transitions = path;
        rep.claims.push(self.claim_u()?);
        rep.inequalities.push(InequalityRecord::new("r2 >= r1-3", self.r(2), self.r(1) - 3));
        rep.inequalities.push(InequalityRecord::new("r1 >= r0-1", self.r(1), self.r(0) - 1));
        Ok(rep)
    }

    /// `U(t-d+2r2, 1) ⊂ K` with the third-step choices.
    fn claim_u(&self) -> Result<ClaimRecord, ConstructionError> {
        let ty = &self.ty;
        let f = &self.field;
        let target = Bidegree::new(ty.t() - ty.shift() + 2 * self.r(2), 1);
        let name = format!("U({},1) in K", target.m);
        let form = build_explicit_f(ty, f, FVariant::Step3);
        let s = &self.ring;
        let e11 = g_degree(ty, 1, 1);
        let g11 = x_pow(s, f, 2, e11);
        let nu = sl_for(&[form.component(1).clone(), form.component(2).clone(), g11.clone()], f)?;
        let x0_pow = x_pow(s, f, 0, self.d(0) + self.d(2) + self.d(3) - 1);
        let mu = sl_for(&[x0_pow, form.component(2).clone(), form.component(3).clone()], f)?;
        let g12 = linear(s, f, &nu, g_degree(ty, 1, 2));
        let g23 = linear(s, f, &mu, g_degree(ty, 2, 3));
        let g33 = linear(s, f, &mu, g_degree(ty, 3, 3));
        let eps = self.sign(1, 3)?;
        let det3 = minor_det(&form, 3).map(|m| m.det).unwrap_or_else(|| Polynomial::zero(s, f));
        let det1 = minor_det(&form, 1).map(|m| m.det).unwrap_or_else(|| Polynomial::zero(s, f));

        let u = Arc::new(RingSpec::u(ty));
        let mv = |p: &Polynomial<F>| p.embed_base(&u).expect("base-only polynomial");
        let z1 = Polynomial::var(&u, f, Var::Fiber(0));
        let z3 = Polynomial::var(&u, f, Var::Fiber(1));
        let eps_det1 = if eps > 0 { mv(&det1) } else { -&mv(&det1) };
        let gens = vec![
            &mv(form.component(1)) * &z1,
            mv(form.component(2)),
            &mv(form.component(3)) * &z3,
            &mv(&g12) * &z1,
            &mv(&g23) * &z3,
            &(&mv(&g11) * &z1) + &(&mv(&g33) * &z3),
            &(&mv(&det3) * &z1) - &(&eps_det1 * &z3),
        ];
        let note = format!("mu = {mu:?}, nu = {nu:?}, eps13 = {eps}");
        self.claim(name, &u, gens, target, note)
    }

    /// `S(t+2r_t0+2r_t1, 0) ⊂ (f_t0, f_t1, g_t0t1, det A_t2)` with the
    /// transition choices.
    fn transition_claim(&self, tr: &Transition) -> Result<ClaimRecord, ConstructionError> {
        let [t0, t1, t2, t3] = tr.tau;
        let ty = &self.ty;
        let f = &self.field;
        let s = &self.ring;
        let target = Bidegree::new(ty.t() + 2 * self.r(t0) + 2 * self.r(t1), 0);
        let name = format!("S({},0) in (f{t0},f{t1},g{t0}{t1},det A{t2})", target.m);
        let (a, b, c) = (self.d(t0), self.d(t1), self.d(t3));
        if a == 0 || b == 0 {
            return Ok(ClaimRecord::trivial(name, target, "a component is a unit"));
        }
        let mut comps: [Polynomial<F>; 4] = [0, 1, 2, 3].map(|j| fermat(s, f, self.d(j)));
        comps[t0] = &x_pow(s, f, 0, a) + &x_pow(s, f, 1, a);
        comps[t1] = &x_pow(s, f, 0, b) + &x_pow(s, f, 2, b);
        comps[t3] = x_pow(s, f, 0, c);
        let form = QuadricForm::from_components(ty, s, f, comps);
        let det = minor_det(&form, t2).expect("t2 > t3 >= 0").det;
        let lambda = sl_for(
            &[x_pow(s, f, 0, a + b + c - 1), form.component(t0).clone(), form.component(t1).clone()],
            f,
        )?;
        let (i, j) = sorted(t0, t1);
        let g = linear(s, f, &lambda, g_degree(ty, i, j));
        let gens = vec![form.component(t0).clone(), form.component(t1).clone(), g, det];
        self.claim(name, s, gens, target, format!("lambda = {lambda:?}"))
    }

    fn step4(&self, sigma: [usize; 4]) -> Result<StepReport, ConstructionError> {
        let j = sigma[0];
        let mut rep = self.report(4, sigma, &[(j, 4)], &self.full)?;
        let ty = &self.ty;
        let f = &self.field;
        let s = &self.ring;
        let dj = self.d(j);
        let fj = fermat(s, f, dj);
        let partials: Vec<Polynomial<F>> = (0..3)
            .map(|k| fj.partial(Var::Base(k)).expect("degree below characteristic"))
            .collect();
        if j < 3 {
            let target = Bidegree::new(3 * dj - 5, 0);
            let name = format!("S({},0) in (df{j}/dx)", target.m);
            rep.claims.push(if dj == 0 {
                ClaimRecord::trivial(name, target, "f_j is a unit")
            } else {
                self.claim(name, s, partials, target, String::new())?
            });
            rep.inequalities.push(InequalityRecord::new(format!("t+4r{j} >= 3d{j}-5"), ty.t() + 4 * self.r(j), 3 * dj - 5));
        } else {
            let target = Bidegree::new(ty.t() + 4 * self.r(3), 0);
            let name = format!("S({},0) in (df3/dx, g33)", target.m);
            rep.claims.push(if dj == 0 {
                ClaimRecord::trivial(name, target, "f_3 is a unit")
            } else {
                let lambda = sl_for(&partials, f)?;
                let mut gens = partials;
                gens.push(linear(s, f, &lambda, g_degree(ty, 3, 3)));
                self.claim(name, s, gens, target, format!("lambda = {lambda:?}"))?
            });
            let r_sum: i64 = (0..4).map(|k| self.r(k)).sum();
            rep.inequalities.push(InequalityRecord::new("r0+r1+r2+r3+2d+3 >= 0", r_sum + 2 * ty.shift() + 3, 0));
        }
        Ok(rep)
    }

    /// Every class for every relevant index choice, the signs ε, and the
    /// coverage count.
    pub fn verify_all(&self) -> Result<DecompositionReport, ConstructionError> {
        let mut steps = Vec::new();
        let rest = |used: &[usize]| -> Vec<usize> { (0..4).filter(|k| !used.contains(k)).collect() };
        for skip in (0..4).rev() {
            let triple = rest(&[skip]);
            steps.push(self.step1([triple[0], triple[1], triple[2], skip])?);
        }
        for a in 0..4 {
            for b in (0..4).filter(|&b| b != a) {
                let o = rest(&[a, b]);
                steps.push(self.step2([a, b, o[0], o[1]])?);
            }
        }
        for a in 0..4 {
            for b in a + 1..4 {
                let o = rest(&[a, b]);
                steps.push(self.step3([a, b, o[0], o[1]])?);
            }
        }
        for j in 0..4 {
            let o = rest(&[j]);
            steps.push(self.step4([j, o[0], o[1], o[2]])?);
        }
        let mut signs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                signs.push(SignRecord {
                    i,
                    j,
                    outcome: det_congruence_sign(&self.form, i, j, &self.jacobian)?,
                });
            }
        }
        Ok(DecompositionReport {
            type_label: self.ty.to_string(),
            steps,
            signs,
            coverage: coverage(&self.ty),
            every_pair_reaches_goal: transition_paths().values().all(Option::is_some),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_reaches_goal() {
        let paths = transition_paths();
        assert_eq!(paths.len(), 6);
        assert!(paths.values().all(Option::is_some));
        for e in transition_edges() {
            assert!(e.tau[3] < e.tau[2]);
        }
        assert_eq!(paths[&(1, 2)], Some(Vec::new()));
    }

    #[test]
    fn coverage_is_complete() {
        let ty = TypeTuple::new([2, 2, 2, 2]).unwrap();
        let c = coverage(&ty);
        assert_eq!(c.total, 735);
        assert_eq!(c.unmatched, 0);
        assert_eq!(c.per_step.iter().sum::<usize>(), 735);
    }
}
