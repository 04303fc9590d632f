//! Worked examples for every module, each checked against an oracle computed
//! here independently of the library where the value is not immediate.

use std::sync::Arc;

use gradus_core::constructions::{
    build_explicit_f, build_explicit_g, build_forms, det_congruence_sign, g_degree, minor_det, verify_prop_main, FVariant, Mode,
    SignOutcome, StepContext, Verdict,
};
use gradus_core::graded_ideal::quotient_piece_dim;
use gradus_core::lefschetz::{
    gen3_bound_check, gen4_bound, gen4_bound_check, harima_watanabe_check, hilbert_actual, hilbert_ci, is_sl_element,
    monomial_ci, CIQuotient, LefschetzError, SlSearch,
};
use gradus_core::linalg::{is_surjective, rank, row_space_reduce, rref};
use gradus_core::poly::power_of_linear;
use gradus_core::scalar::reduce_integer_poly_mod_p;
use gradus_core::{
    build_matrix, contains_full_piece, in_j, Bidegree, ExactMatrix, Field, IdealPieceBasis, MembershipProblem,
    Monomial, Polynomial, PrimeField, Rationals, RingSpec, Scalar, TypeTuple, Var,
};
use num_bigint::BigInt;

fn fp() -> PrimeField {
    PrimeField::default()
}

fn ty(d: [u32; 4]) -> TypeTuple {
    TypeTuple::new(d).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Coefficients of `prod (1 + t + ... + t^(m-1))`.
fn product_oracle(degrees: &[u32]) -> Vec<u64> {
    degrees.iter().fold(vec![1u64], |acc, &m| {
        let mut out = vec![0; acc.len() + m as usize - 1];
        for (i, a) in acc.iter().enumerate() {
            for k in 0..m as usize {
                out[i + k] += a;
            }
        }
        out
    })
}

fn parse<F: Field>(ring: &Arc<RingSpec>, field: &F, s: &str) -> Polynomial<F> {
    Polynomial::parse(ring, field, s).unwrap()
}

// scalar

#[test]
fn scalar_arithmetic() {
    let half = Scalar::rational(1, 2).unwrap();
    let third = Scalar::rational(1, 3).unwrap();
    assert_eq!(half.add(&third).unwrap(), Scalar::rational(5, 6).unwrap());
    let a = Scalar::modular(3, 7).unwrap();
    assert_eq!(a.mul(&Scalar::modular(5, 7).unwrap()).unwrap(), Scalar::modular(1, 7).unwrap());
    let two_thirds = Scalar::rational(2, 3).unwrap();
    assert_eq!(two_thirds.div(&two_thirds).unwrap(), Scalar::rational(1, 1).unwrap());
}

#[test]
fn integer_reduction_mod_p() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let seven = PrimeField::new(7).unwrap();
    let expect = |v: &[i64], p| v.iter().map(|&x| Scalar::modular(x, p).unwrap()).collect::<Vec<_>>();
    assert_eq!(reduce_integer_poly_mod_p(&ints(&[6, -1, 10]), seven), expect(&[6, 6, 3], 7));
    assert_eq!(reduce_integer_poly_mod_p(&ints(&[0, 0]), fp()), expect(&[0, 0], 65537));
    assert_eq!(reduce_integer_poly_mod_p(&ints(&[65537]), fp()), expect(&[0], 65537));
}

// poly

#[test]
fn basis_examples() {
    let s0 = RingSpec::s(&ty([0, 0, 0, 0]));
    let b = s0.basis(Bidegree::new(1, 1));
    assert_eq!(b.len(), 12);
    assert!(b.iter().all(|m| m.total_degree() == 2 && m.base_exponents().iter().sum::<u16>() == 1));
    assert_eq!(s0.basis(Bidegree::new(5, 4)).len() as u64, binomial(7, 2) * binomial(7, 3));

    // r = (0,1,1,2): only y3 has first degree -2.
    let s = RingSpec::s(&ty([0, 2, 2, 4]));
    assert_eq!(s.fiber_weights(), &[0, 1, 1, 2]);
    let b = s.basis(Bidegree::new(-2, 1));
    assert_eq!(b, vec![s.var_monomial(Var::Fiber(3))]);
}

#[test]
fn dim_examples() {
    assert_eq!(RingSpec::p(3).dim(Bidegree::new(8, 0)), binomial(11, 3));
    assert_eq!(RingSpec::s(&ty([2, 2, 2, 2])).dim(Bidegree::new(5, 4)), 735);
    for ring in [RingSpec::p(2), RingSpec::s(&ty([1, 3, 3, 5])), RingSpec::t(&ty([2, 2, 4, 4]))] {
        assert_eq!(ring.dim(Bidegree::new(3, -1)), 0);
    }
}

#[test]
fn multiplication_examples() {
    let ring = Arc::new(RingSpec::s(&ty([2, 4, 4, 6])));
    let f = fp();
    let p = &parse(&ring, &f, "x0 + x1") * &parse(&ring, &f, "x0 - x1");
    assert_eq!(p, parse(&ring, &f, "x0^2 - x1^2"));
    let f0 = parse(&ring, &f, "x0^2 + 3*x1*x2");
    let y0f0 = &Polynomial::var(&ring, &f, Var::Fiber(0)) * &f0;
    let ty = ty([2, 4, 4, 6]);
    assert_eq!(y0f0.bidegree(), Some(Bidegree::new(ty.dj(0) - ty.rj(0), 1)));
    assert!((&p * &Polynomial::zero(&ring, &f)).is_zero());
}

#[test]
fn derivative_examples() {
    let ring = Arc::new(RingSpec::s(&ty([0, 2, 2, 4])));
    let f = fp();
    let x0d = parse(&ring, &f, "x0^5");
    assert_eq!(x0d.partial(Var::Base(0)).unwrap(), parse(&ring, &f, "5*x0^4"));
    let f0 = parse(&ring, &f, "x0^2 + x1*x2");
    let f0y0 = &f0 * &parse(&ring, &f, "y0^2");
    assert_eq!(f0y0.partial(Var::Fiber(0)).unwrap(), &f0 * &parse(&ring, &f, "2*y0"));
    assert!(parse(&ring, &f, "x1^3").partial(Var::Base(0)).unwrap().is_zero());
}

#[test]
fn linear_power_examples() {
    let ring = Arc::new(RingSpec::p(2));
    let f = fp();
    let c = [f.one(), f.one(), f.zero()];
    assert_eq!(power_of_linear(&ring, &f, &c, 2).unwrap(), parse(&ring, &f, "x0^2 + 2*x0*x1 + x1^2"));
    assert_eq!(power_of_linear(&ring, &f, &c, 0).unwrap(), Polynomial::one(&ring, &f));

    // (x0+x1+x2)^3 modulo the squares: expand and keep the square-free terms.
    let cube = power_of_linear(&ring, &f, &[f.one(), f.one(), f.one()], 3).unwrap();
    let square_free: Vec<(Monomial, u64)> = cube
        .terms()
        .filter(|(m, _)| m.max_exponent() < 2)
        .map(|(m, c)| (m.clone(), *c))
        .collect();
    assert_eq!(Polynomial::from_terms(&ring, &f, square_free.clone()), parse(&ring, &f, "6*x0*x1*x2"));
    let squares = monomial_ci(&ring, &f, &[2, 2, 2]);
    let piece = IdealPieceBasis::build(&MembershipProblem::new(&ring, &f, squares, Bidegree::new(3, 0)).unwrap());
    let residue = piece.reduce(&cube).unwrap();
    let pos = piece.piece().position(&square_free[0].0).unwrap();
    assert_eq!(residue, vec![(pos, 6)]);
}

// linalg

#[test]
fn rank_examples() {
    let f = fp();
    assert_eq!(rank(&ExactMatrix::identity(&f, 3)), 3);
    assert_eq!(rank(&ExactMatrix::zeros(&f, 4, 5)), 0);
    assert_eq!(rank(&ExactMatrix::from_i64_rows(&Rationals, &[vec![1, 2], vec![2, 4]])), 1);
}

#[test]
fn surjectivity_examples() {
    let f = fp();
    assert!(is_surjective(&ExactMatrix::from_i64_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]])));
    assert!(!is_surjective(&ExactMatrix::from_i64_rows(&f, &[vec![1, 0, 0], vec![0, 0, 0]])));
    let (form, g) = build_forms(&ty([2, 2, 2, 2]), &f, Mode::Explicit);
    let prob = gradus_core::constructions::main_problem(&form, &g).unwrap();
    assert!(is_surjective(&build_matrix(&prob).to_dense()));
}

#[test]
fn row_space_reduce_examples() {
    let q = Rationals;
    let m = ExactMatrix::from_i64_rows(&q, &[vec![1, 2, 0, 1], vec![0, 1, 1, 0]]);
    let (r, _) = rref(&m);
    let v = |x: &[i64]| x.iter().map(|&a| q.from_i64(a)).collect::<Vec<_>>();
    let zero = v(&[0, 0, 0, 0]);
    assert_eq!(row_space_reduce(&r, &v(&[2, 5, 1, 2])).unwrap(), zero);
    // No entry on a pivot column: nothing to eliminate.
    let off_pivot = v(&[0, 0, 3, 7]);
    assert_eq!(row_space_reduce(&r, &off_pivot).unwrap(), off_pivot);
    let once = row_space_reduce(&r, &v(&[4, -1, 2, 9])).unwrap();
    assert_eq!(row_space_reduce(&r, &once).unwrap(), once);
}

// graded_ideal

#[test]
fn build_matrix_examples() {
    let ring = Arc::new(RingSpec::p(2));
    let f = fp();
    let lin: Vec<_> = ["x0", "x1", "x2"].iter().map(|s| parse(&ring, &f, s)).collect();
    let m = build_matrix(&MembershipProblem::new(&ring, &f, lin, Bidegree::new(1, 0)).unwrap());
    assert_eq!((m.rows(), m.cols(), m.nnz()), (3, 3, 3));
    assert_eq!(m.rank_certificate().rank, 3);
    let sq = vec![parse(&ring, &f, "x0^2")];
    let m = build_matrix(&MembershipProblem::new(&ring, &f, sq, Bidegree::new(1, 0)).unwrap());
    assert_eq!((m.rows(), m.cols()), (3, 0));

    let (form, g) = build_forms(&ty([2, 2, 2, 2]), &f, Mode::Explicit);
    let prob = gradus_core::constructions::main_problem(&form, &g).unwrap();
    assert_eq!(prob.generators().len(), 8);
    assert_eq!(build_matrix(&prob).rows() as u64, RingSpec::s(&ty([2, 2, 2, 2])).dim(Bidegree::new(5, 4)));
}

#[test]
fn containment_examples() {
    let ring = Arc::new(RingSpec::p(2));
    let f = fp();
    // A complete intersection of degrees (2,3,2): full from 2+3+2-2 on.
    let ci = vec![
        parse(&ring, &f, "x0^2 + x1*x2"),
        parse(&ring, &f, "x1^3 + x0*x2^2 - x2^3"),
        parse(&ring, &f, "x2^2 + x0*x1 + 3*x1^2"),
    ];
    for m in 5..8 {
        let prob = MembershipProblem::new(&ring, &f, ci.clone(), Bidegree::new(m, 0)).unwrap();
        assert!(contains_full_piece(&prob).full_target_rank, "m = {m}");
    }
    let pair = vec![parse(&ring, &f, "x0^2"), parse(&ring, &f, "x1^2")];
    for m in 0..8 {
        let prob = MembershipProblem::new(&ring, &f, pair.clone(), Bidegree::new(m, 0)).unwrap();
        assert!(!contains_full_piece(&prob).full_target_rank);
    }
    let p3 = Arc::new(RingSpec::p(3));
    let fermat = monomial_ci(&p3, &f, &[3, 3, 3, 3]);
    let cert = contains_full_piece(&MembershipProblem::new(&p3, &f, fermat, Bidegree::new(8, 0)).unwrap());
    assert!(!cert.full_target_rank);
    assert_eq!(cert.deficiency() as u64, *product_oracle(&[3, 3, 3, 3]).last().unwrap());
}

#[test]
fn quotient_dim_examples() {
    let p3 = Arc::new(RingSpec::p(3));
    let f = fp();
    let quartic = monomial_ci(&p3, &f, &[3, 3, 3, 3]);
    let at = |m| MembershipProblem::new(&p3, &f, quartic.clone(), Bidegree::new(m, 0)).unwrap();
    assert_eq!(quotient_piece_dim(&at(4)) as u64, product_oracle(&[3, 3, 3, 3])[4]);
    assert_eq!(quotient_piece_dim(&at(9)), 0);
    let ring = Arc::new(RingSpec::s(&ty([1, 1, 3, 3])));
    let empty = MembershipProblem::new(&ring, &f, vec![], Bidegree::new(4, 2)).unwrap();
    assert_eq!(quotient_piece_dim(&empty) as u64, ring.dim(Bidegree::new(4, 2)));
}

#[test]
fn j_examples() {
    let f = fp();
    for d in [[2, 2, 2, 2], [0, 2, 2, 4], [1, 1, 3, 3]] {
        let ctx = StepContext::new(&ty(d), &f, Mode::Explicit).unwrap();
        let ring = ctx.form().ring().clone();
        for j in 0..4 {
            let fy = ctx.form().component(j) * &Polynomial::var(&ring, &f, Var::Fiber(j));
            assert!(in_j(&fy, ctx.jacobian_piece()).unwrap(), "{d:?} f{j} y{j}");
        }
        // The Jacobian ideal alone misses part of S(t,4).
        assert!(!ctx.jacobian_piece().is_full());
        assert!(!in_j(&Polynomial::one(&ring, &f), ctx.jacobian_piece()).unwrap());
        if d[0] == 0 {
            assert!(in_j(&Polynomial::var(&ring, &f, Var::Fiber(0)), ctx.jacobian_piece()).unwrap());
        }
    }
}

// lefschetz

#[test]
fn hilbert_ci_examples() {
    for degrees in [vec![3, 3, 3, 3], vec![2, 2, 2], vec![1, 2], vec![5, 1, 4]] {
        assert_eq!(hilbert_ci(&degrees).unwrap().coefficients, product_oracle(&degrees));
    }
    assert_eq!(hilbert_ci(&[3, 3, 3, 3]).unwrap().coefficients, vec![1, 4, 10, 16, 19, 16, 10, 4, 1]);
    assert_eq!(hilbert_ci(&[1, 2]).unwrap().coefficients, vec![1, 1]);
    assert!(matches!(hilbert_ci(&[0, 2, 2]), Err(LefschetzError::ZeroDegree(_))));
}

#[test]
fn hilbert_actual_examples() {
    let f = fp();
    let p3 = Arc::new(RingSpec::p(3));
    let quartic: Vec<_> = (0..4)
        .map(|k| {
            let mut e = [0u16; 4];
            e[k] = 4;
            Polynomial::base_monomial(&p3, &f, &e).partial(Var::Base(k)).unwrap()
        })
        .collect();
    let q = CIQuotient::certify(&p3, &f, quartic).unwrap();
    assert_eq!(hilbert_actual(&q).coefficients, product_oracle(&[3, 3, 3, 3]));

    let p2 = Arc::new(RingSpec::p(2));
    let two = vec![parse(&p2, &f, "x0^2"), parse(&p2, &f, "x1^2")];
    assert!(CIQuotient::certify(&p2, &f, two).is_err());
    let lin: Vec<_> = ["x0", "x1", "x2"].iter().map(|s| parse(&p2, &f, s)).collect();
    assert_eq!(hilbert_actual(&CIQuotient::certify(&p2, &f, lin).unwrap()).coefficients, vec![1]);
}

#[test]
fn sl_examples() {
    let f = fp();
    let p2 = Arc::new(RingSpec::p(2));
    let q = CIQuotient::certify(&p2, &f, monomial_ci(&p2, &f, &[2, 2, 2])).unwrap();
    assert!(is_sl_element(&q, &parse(&p2, &f, "x0 + x1 + x2")).unwrap().is_sl());
    let verdict = is_sl_element(&q, &parse(&p2, &f, "x0")).unwrap();
    assert!(verdict.failures.iter().any(|e| e.m == 0 && e.i == 2));
    assert!(verdict.failures.iter().all(|e| e.i > 0));
    let q = CIQuotient::certify(&p2, &f, monomial_ci(&p2, &f, &[2, 3, 3])).unwrap();
    assert!(is_sl_element(&q, &parse(&p2, &f, "x0 + x1 + x2")).unwrap().is_sl());
}

#[test]
fn socle_bound_examples() {
    let f = fp();
    let p2 = Arc::new(RingSpec::p(2));
    let q = CIQuotient::certify(&p2, &f, monomial_ci(&p2, &f, &[3, 3, 3])).unwrap();
    let c = gen3_bound_check(&q);
    assert_eq!((c.bound, c.full_at_bound, c.socle_dim), (7, true, 1));
    let p1 = Arc::new(RingSpec::p(1));
    let q = CIQuotient::certify(&p1, &f, monomial_ci(&p1, &f, &[2, 2])).unwrap();
    assert_eq!(q.hilbert().coefficients, vec![1, 2, 1]);
    let c = gen3_bound_check(&q);
    assert_eq!((c.bound, c.full_at_bound, c.socle_dim), (3, true, 1));
}

#[test]
fn power_bound_examples() {
    let f = fp();
    let p3 = Arc::new(RingSpec::p(3));
    let q = CIQuotient::certify(&p3, &f, monomial_ci(&p3, &f, &[3, 3, 3, 3])).unwrap();
    let ell = parse(&p3, &f, "x0 + x1 + x2 + x3");
    let c = gen4_bound_check(&q, &ell, 4, 8).unwrap();
    assert_eq!(c.bound, 6);
    assert!(c.at_or_above_bound() && c.certificate.full_target_rank);
    for m in 0..4 {
        assert!(gen4_bound_check(&q, &ell, 0, m).unwrap().certificate.full_target_rank);
    }
    assert_eq!(gen4_bound(&[3, 3, 3, 3], 4, 3), 6);
}

#[test]
fn harima_watanabe_examples() {
    let f = fp();
    let p2 = Arc::new(RingSpec::p(2));
    let f0 = power_of_linear(&p2, &f, &[f.one(), f.one(), f.zero()], 3).unwrap();
    // With x1 = -x0 the last two forms coincide, leaving the common zeros
    // (z, -z, 1) with z^4 = -1.
    let shared = harima_watanabe_check(&f0, &parse(&p2, &f, "x0^4 + x2^4"), &parse(&p2, &f, "x1^4 + x2^4"));
    assert!(matches!(shared, Err(LefschetzError::NotCi(_))));
    let found = harima_watanabe_check(&f0, &parse(&p2, &f, "x0^4 + x2^4"), &parse(&p2, &f, "x1^4 + 2*x2^4")).unwrap();
    assert!(matches!(found, SlSearch::Found(_)));
    // x2 divides all three: a common zero, so not a complete intersection.
    let bad = harima_watanabe_check(
        &parse(&p2, &f, "x2^2"),
        &parse(&p2, &f, "x0*x2"),
        &parse(&p2, &f, "x1*x2"),
    );
    assert!(matches!(bad, Err(LefschetzError::NotCi(_))));
}

// constructions

#[test]
fn explicit_f_examples() {
    let f = fp();
    let ring = Arc::new(RingSpec::s(&ty([2, 2, 2, 2])));
    let form = build_explicit_f(&ty([2, 2, 2, 2]), &f, FVariant::Step3);
    let expect = ["x0^2", "x0^2", "x0^2 + x1^2", "x0^2 + x2^2"];
    for (j, e) in expect.iter().enumerate() {
        assert_eq!(form.component(j), &parse(&ring, &f, e));
    }
    let t = ty([1, 3, 3, 5]);
    let ring = Arc::new(RingSpec::s(&t));
    let form = build_explicit_f(&t, &f, FVariant::Step4);
    for j in 0..3 {
        let d = t.dj(j);
        assert_eq!(form.component(j), &parse(&ring, &f, &format!("x0^{d} + x1^{d} + x2^{d}")));
    }
    let t = ty([0, 0, 2, 4]);
    for v in [FVariant::General, FVariant::Step2, FVariant::Step3, FVariant::Step4] {
        let form = build_explicit_f(&t, &f, v);
        assert_eq!(form.component(0), &Polynomial::one(form.ring(), &f));
        assert_eq!(form.component(1), &Polynomial::one(form.ring(), &f));
    }
}

#[test]
fn g_examples() {
    let f = fp();
    let t = ty([2, 2, 2, 2]);
    let (_, general) = build_forms(&t, &f, Mode::Explicit);
    let g = build_explicit_g(&t, &f, &[1, 0, 0], &[0, 1, 0], &general);
    assert_eq!(g_degree(&t, 1, 1), 3);
    assert_eq!(g.component(1, 1), parse(&Arc::new(RingSpec::s(&t)), &f, "x2^3"));
    assert_eq!(g.component(0, 1), general.component(0, 1));
    assert_eq!(g_degree(&ty([0, 2, 2, 4]), 3, 3), 5);
    // In random mode every component is present with its own degree.
    let t = ty([1, 1, 3, 5]);
    let (_, g) = build_forms(&t, &f, Mode::Random(3));
    for (i, j) in gradus_core::constructions::G_INDICES {
        let c = g.component(i, j);
        assert_eq!(c.bidegree(), Some(Bidegree::new(g_degree(&t, i, j), 0)), "g{i}{j}");
    }
}

#[test]
fn minor_examples() {
    let f = fp();
    for d in [[2, 2, 2, 2], [1, 3, 3, 5], [2, 4, 4, 6]] {
        let t = ty(d);
        let form = build_explicit_f(&t, &f, FVariant::Step3);
        let (d0, d2, d3) = (t.dj(0), t.dj(2), t.dj(3));
        let expect = parse(form.ring(), &f, &format!("{}*x0^{}*x1^{}*x2^{}", d0 * d2 * d3, d0 - 1, d2 - 1, d3 - 1));
        assert_eq!(minor_det(&form, 1).unwrap().det, expect, "{t}");
    }
    for d in [[0, 2, 2, 4], [0, 2, 4, 6]] {
        let t = ty(d);
        let form = build_explicit_f(&t, &f, FVariant::Step3);
        let (d2, d3) = (t.dj(2), t.dj(3));
        let expect = parse(form.ring(), &f, &format!("{}*x0^{}*x1^{}", -d2 * d3, d3 - 1, d2 - 1));
        assert_eq!(minor_det(&form, 1).unwrap().det, expect, "{t}");
        assert!(minor_det(&form, 0).is_none());
    }
    let form = build_explicit_f(&ty([0, 0, 0, 0]), &f, FVariant::General);
    assert!(minor_det(&form, 2).unwrap().det.is_zero());
}

#[test]
fn determinant_signs() {
    let f = fp();
    for d in [[2, 2, 2, 2], [1, 1, 3, 3], [0, 2, 2, 4]] {
        let ctx = StepContext::new(&ty(d), &f, Mode::Explicit).unwrap();
        for i in 0..4 {
            assert_eq!(det_congruence_sign(ctx.form(), i, i, ctx.jacobian_piece()).unwrap(), SignOutcome::Unique(1));
            for j in i + 1..4 {
                let sign = det_congruence_sign(ctx.form(), i, j, ctx.jacobian_piece()).unwrap();
                if d[0] == 0 && i == 0 {
                    assert_eq!(sign, SignOutcome::Either);
                } else {
                    // Minors taken with the remaining columns in ascending order.
                    let expected = if (i + j) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(sign, SignOutcome::Unique(expected), "{d:?} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn step_examples() {
    let f = fp();
    let ctx = StepContext::new(&ty([2, 2, 2, 2]), &f, Mode::Explicit).unwrap();
    let rep = ctx.verify_step(1, [0, 1, 2, 3]).unwrap();
    assert_eq!(rep.class, "y0*y1*y2");
    assert!(rep.in_j && rep.passed());
    let ctx = StepContext::new(&ty([0, 2, 2, 4]), &f, Mode::Explicit).unwrap();
    let rep = ctx.verify_step(1, [0, 1, 2, 3]).unwrap();
    assert!(rep.claims.iter().any(|c| c.name == "y0 in J" && c.holds));
    for step in 1..=4 {
        let rep = ctx.verify_step(step, [0, 1, 2, 3]).unwrap();
        assert!(rep.inequalities.iter().all(|i| i.holds), "step {step}");
    }
}

#[test]
fn prop_main_examples() {
    let f = fp();
    let out = verify_prop_main(&ty([2, 2, 2, 2]), Mode::Explicit, &f).unwrap();
    let cert = out.certificate().unwrap();
    assert_eq!((out.verdict(), cert.rows), (Verdict::Full, 735));
    assert_eq!(verify_prop_main(&ty([0, 0, 0, 0]), Mode::Explicit, &f).unwrap().verdict(), Verdict::TriviallyRational);
    let full = (0..10)
        .filter(|&s| verify_prop_main(&ty([1, 1, 1, 3]), Mode::Random(s), &f).unwrap().verdict() == Verdict::Full)
        .count();
    assert!(full >= 9);
}
