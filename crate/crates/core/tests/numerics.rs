use proptest::prelude::*;
use rug::ops::Pow;
use starkres_core::numerics::linalg::{det_lu, HpMatrix};
use starkres_core::numerics::newton::{newton2, NewtonOptions};
use starkres_core::numerics::quadrature::laguerre_nodes;
use starkres_core::{Error, Float, HpComplex, PrecisionContext};

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn close(a: &Float, b: &Float, tol: &Float) -> bool {
    Float::with_val(a.prec(), a - b).abs() <= *tol
}

fn factorial(k: u32, prec: u32) -> Float {
    (1..=k).fold(Float::with_val(prec, 1), |acc, i| acc * i)
}

#[test]
fn single_node_rule() {
    let c = ctx(40);
    let q = laguerre_nodes(1, &c).unwrap();
    assert!(close(&q.nodes[0], &c.real(1), &c.tol(2)));
    assert!(close(&q.weights[0], &c.real(1), &c.tol(2)));
}

#[test]
fn two_node_rule_matches_closed_form() {
    let c = ctx(50);
    let q = laguerre_nodes(2, &c).unwrap();
    let r2 = c.real(2).sqrt();
    assert!(close(&q.nodes[0], &(c.real(2) - &r2), &c.tol(2)));
    assert!(close(&q.nodes[1], &(c.real(2) + &r2), &c.tol(2)));
    let cube = q.integrate(|x| Float::with_val(x.prec(), x.pow(3u32)));
    assert!(close(&cube, &c.real(6), &c.tol(3)));
}

#[test]
fn rejects_out_of_range_order() {
    let c = ctx(30);
    assert!(matches!(laguerre_nodes(0, &c), Err(Error::InvalidArgument(_))));
    assert!(matches!(laguerre_nodes(513, &c), Err(Error::InvalidArgument(_))));
}

#[test]
fn largest_order_is_reachable() {
    let c = ctx(30);
    let q = laguerre_nodes(512, &c).unwrap();
    assert_eq!(q.nodes.len(), 512);
    assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
    let total = starkres_core::numerics::linalg::sum(&q.weights, c.bits());
    assert!(close(&total, &c.real(1), &c.tol(20)));
}

#[test]
fn rule_is_deterministic() {
    let c = ctx(60);
    let a = laguerre_nodes(17, &c).unwrap();
    let b = laguerre_nodes(17, &c).unwrap();
    let show = |v: &[Float]| v.iter().map(|x| x.to_string_radix(10, None)).collect::<Vec<_>>();
    assert_eq!(show(&a.nodes), show(&b.nodes));
    assert_eq!(show(&a.weights), show(&b.weights));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moments_exact_through_degree_2m_minus_1(m in 1usize..=24, frac in 0.0f64..1.0) {
        let c = ctx(40);
        let k = ((2 * m - 1) as f64 * frac).round() as u32;
        let q = laguerre_nodes(m, &c).unwrap();
        let got = q.integrate(|x| Float::with_val(x.prec(), x.pow(k)));
        let want = factorial(k, c.bits());
        let rel = Float::with_val(c.bits(), &got - &want).abs() / &want;
        prop_assert!(rel <= c.tol(20), "M={m} k={k} rel={rel}");
    }

    #[test]
    fn zeros_interlace(m in 1usize..=40) {
        let c = ctx(30);
        let lo = laguerre_nodes(m, &c).unwrap();
        let hi = laguerre_nodes(m + 1, &c).unwrap();
        for i in 0..m {
            prop_assert!(hi.nodes[i] < lo.nodes[i] && lo.nodes[i] < hi.nodes[i + 1]);
        }
    }
}

fn hp(c: &PrecisionContext, re: f64, im: f64) -> HpComplex {
    HpComplex::with_val(c.bits(), re, im)
}

fn cofactor_det(m: &[Vec<HpComplex>], prec: u32) -> HpComplex {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = HpComplex::zero(prec);
    for j in 0..n {
        let minor: Vec<Vec<HpComplex>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, prec);
        if j % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[test]
fn identity_determinant() {
    let c = ctx(30);
    let d = det_lu(&HpMatrix::identity(5, c.bits()), &c);
    assert_eq!(d, HpComplex::one(c.bits()));
}

#[test]
fn diagonal_determinant() {
    let c = ctx(30);
    let m = HpMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => hp(&c, 2.0, 0.0),
        (1, 1) => hp(&c, 0.0, 3.0),
        _ => HpComplex::zero(c.bits()),
    });
    let d = det_lu(&m, &c);
    assert!(d.re.is_zero());
    assert_eq!(d.im, 6);
}

#[test]
fn zero_pivot_column_gives_exact_zero() {
    let c = ctx(30);
    let m = HpMatrix::from_fn(3, |i, j| if j == 1 { HpComplex::zero(c.bits()) } else { hp(&c, (i + j) as f64, 1.0) });
    assert!(det_lu(&m, &c).is_zero());
}

#[test]
fn lu_matches_cofactor_expansion() {
    let c = ctx(50);
    let p = c.bits();
    // Deterministic pseudo-random entries from a fixed linear congruence.
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let rows: Vec<Vec<HpComplex>> = (0..8).map(|_| (0..8).map(|_| hp(&c, next(), next())).collect()).collect();
    let m = HpMatrix::from_fn(8, |i, j| rows[i][j].clone());
    let lu = det_lu(&m, &c);
    let oracle = cofactor_det(&rows, p);
    let rel = (&lu - &oracle).abs() / oracle.abs();
    assert!(rel < c.pow10(-45), "relative difference {rel}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn determinant_is_row_linear(
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36),
        row in 0usize..6,
        scale in (-3.0f64..3.0, -3.0f64..3.0),
    ) {
        let c = ctx(40);
        let base = HpMatrix::from_fn(6, |i, j| hp(&c, entries[6 * i + j].0, entries[6 * i + j].1));
        let s = hp(&c, scale.0, scale.1);
        let mut scaled = base.clone();
        for v in scaled.row_mut(row) {
            *v = &*v * &s;
        }
        let lhs = det_lu(&scaled, &c);
        let rhs = &det_lu(&base, &c) * &s;
        let err = (&lhs - &rhs).abs();
        let bound = c.tol(10) * Float::with_val(c.bits(), rhs.abs() + 1e-30);
        prop_assert!(err <= bound);
    }
}

fn newton_opts(c: &PrecisionContext) -> NewtonOptions {
    NewtonOptions::for_context(c)
}

#[test]
fn affine_system_in_one_step() {
    let c = ctx(40);
    let p = c.bits();
    let out = newton2(
        |e, a| {
            let one = HpComplex::one(p);
            let two = hp(&c, 2.0, 0.0);
            let z = HpComplex::zero(p);
            Ok(([e - &one, a - &two], [[one.clone(), z.clone()], [z, one]]))
        },
        (HpComplex::zero(p), HpComplex::zero(p)),
        &newton_opts(&c),
        &c,
    )
    .unwrap();
    assert_eq!(out.iterations, 1);
    assert_eq!(out.e, HpComplex::one(p));
    assert_eq!(out.a.re, 2);
}

fn square_system(c: &PrecisionContext) -> impl FnMut(&HpComplex, &HpComplex) -> starkres_core::Result<starkres_core::numerics::newton::Eval2> + '_ {
    let p = c.bits();
    move |e: &HpComplex, a: &HpComplex| {
        let two = hp(c, 2.0, 0.0);
        let z = HpComplex::zero(p);
        let neg_one = hp(c, -1.0, 0.0);
        Ok((
            [&(e * e) - &two, &(a * a) - e],
            [[e * &two, z], [neg_one, a * &two]],
        ))
    }
}

#[test]
fn square_roots_system() {
    let c = ctx(60);
    let seed = (hp(&c, 1.5, 0.0), hp(&c, 1.2, 0.0));
    let out = newton2(square_system(&c), seed, &newton_opts(&c), &c).unwrap();
    let r2 = c.real(2).sqrt();
    let r4 = Float::with_val(c.bits(), r2.sqrt_ref());
    assert!(close(&out.e.re, &r2, &c.tol(5)));
    assert!(close(&out.a.re, &r4, &c.tol(5)));
    assert!(out.e.im.is_zero() && out.a.im.is_zero());
}

#[test]
fn convergence_is_quadratic() {
    let c = ctx(200);
    let r2 = c.real(2).sqrt();
    let r4 = Float::with_val(c.bits(), r2.sqrt_ref());
    let mut errors = Vec::new();
    let mut inner = square_system(&c);
    let seed = (hp(&c, 1.5, 0.0), hp(&c, 1.2, 0.0));
    newton2(
        |e, a| {
            let de = Float::with_val(c.bits(), &e.re - &r2).abs();
            let da = Float::with_val(c.bits(), &a.re - &r4).abs();
            errors.push(starkres_core::numerics::precision::log10_abs(&de.max(&da)));
            inner(e, a)
        },
        seed,
        &newton_opts(&c),
        &c,
    )
    .unwrap();
    // e_{n+1} <= C e_n^2: log errors at least double once in the basin.
    let usable: Vec<f64> = errors.into_iter().take_while(|e| *e > -150.0).collect();
    assert!(usable.len() >= 4);
    for w in usable.windows(2).skip(1) {
        assert!(w[1] <= 2.0 * w[0] + 1.0, "{} -> {}", w[0], w[1]);
    }
}

#[test]
fn singular_jacobian_is_reported() {
    let c = ctx(40);
    let p = c.bits();
    let err = newton2(
        |e, a| {
            let one = HpComplex::one(p);
            Ok(([e + a, e + a], [[one.clone(), one.clone()], [one.clone(), one]]))
        },
        (hp(&c, 1.0, 0.0), hp(&c, 1.0, 0.0)),
        &newton_opts(&c),
        &c,
    )
    .unwrap_err();
    assert!(matches!(err, Error::SingularJacobian { .. }));
}

#[test]
fn iteration_cap_returns_last_iterate() {
    let c = ctx(40);
    let mut opts = newton_opts(&c);
    opts.max_iter = 2;
    let err = newton2(square_system(&c), (hp(&c, 30.0, 0.0), hp(&c, 5.0, 0.0)), &opts, &c).unwrap_err();
    match err {
        Error::MaxIterations { last } => assert_eq!(last.iterations, 2),
        other => panic!("unexpected {other:?}"),
    }
}
