//! Closed-form catalog and exercise-generator checks.

mod common;

use arclen_core::catalog::{
    builtin_problem, make_exercise, neil_case, neil_substitution, pythagorean_triple,
    verify_exercise, CatalogError, ProblemKind, BUILTIN_PROBLEM_NAMES,
};
use arclen_core::{parse, Expr64, Interval};
use common::interior_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn iv(a: f64, b: f64) -> Interval<f64> {
    Interval::new(a, b).unwrap()
}

fn assert_pointwise_equal(a: &Expr64, b: &Expr64, lo: f64, hi: f64, tol: f64) {
    for x in interior_grid(lo, hi) {
        let va = a.eval(x).unwrap();
        let vb = b.eval(x).unwrap();
        assert!(
            (va - vb).abs() <= tol * (1.0 + va.abs()),
            "{a} vs {b} at {x}: {va} vs {vb}"
        );
    }
}

#[test]
fn substitution_identities() {
    // with t = s + √(1+s²): √(1+s²) = (t²+1)/2t and s = (t²−1)/2t
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let s: f64 = rng.gen_range(-10.0..10.0);
        let hyp = (1.0 + s * s).sqrt();
        let t = s + hyp;
        assert!((hyp - (t * t + 1.0) / (2.0 * t)).abs() <= 1e-12);
        assert!((s - (t * t - 1.0) / (2.0 * t)).abs() <= 1e-12);
    }
}

#[test]
fn parabola_case_matches_textbook_form() {
    let case = neil_case(1, 0.5_f64).unwrap();
    assert_pointwise_equal(&case.f, &parse("x^2/2").unwrap(), -5.0, 5.0, 1e-15);
    assert_eq!(case.integrand, parse::<f64>("sqrt(1+x^2)").unwrap());
    let paper_g: Expr64 = parse("x*sqrt(1+x^2)/2 + log(x+sqrt(1+x^2))/2").unwrap();
    assert_eq!(case.antiderivative, paper_g);
}

#[test]
fn semicubical_case_matches_textbook_form() {
    let case = neil_case(2, 4.0 / 9.0_f64).unwrap();
    assert_pointwise_equal(&case.f, &parse("2*x^(3/2)/3").unwrap(), 0.1, 10.0, 1e-14);
    assert_pointwise_equal(&case.integrand, &parse("sqrt(1+x)").unwrap(), 0.1, 10.0, 1e-14);
    let paper_g: Expr64 = parse("2*(1+x)^(3/2)/3").unwrap();
    assert_pointwise_equal(&case.antiderivative, &paper_g, 0.1, 10.0, 1e-13);
    // G(8) − G(3) is the exact semicubical length 38/3
    let g = &case.antiderivative;
    let increment = g.eval(8.0).unwrap() - g.eval(3.0).unwrap();
    assert!((increment - 38.0 / 3.0).abs() <= 1e-12, "got {increment}");
}

#[test]
fn quartic_thirds_case_matches_textbook_form() {
    let case = neil_case(3, 27.0 / 64.0_f64).unwrap();
    assert_pointwise_equal(&case.f, &parse("3*x^(4/3)/4").unwrap(), 0.05, 10.0, 1e-13);
    let paper_g: Expr64 = parse(
        "3*x^(1/3)*(2*x^(2/3)+1)*sqrt(1+x^(2/3))/8 - 3*log(x^(1/3)+sqrt(1+x^(2/3)))/8",
    )
    .unwrap();
    assert_pointwise_equal(&case.antiderivative, &paper_g, 0.05, 10.0, 1e-12);
}

#[test]
fn flattened_forms_stop_at_three() {
    assert!(matches!(
        neil_case(4, 1.0_f64),
        Err(CatalogError::UnsupportedCaseIndex { n: 4 })
    ));
    assert!(matches!(
        neil_case(0, 1.0_f64),
        Err(CatalogError::InvalidFamilyIndex)
    ));
    assert!(matches!(
        neil_case(2, -1.0_f64),
        Err(CatalogError::InvalidCoefficient { .. })
    ));
    assert!(neil_substitution(7, 2.5_f64).is_ok());
}

#[test]
fn hand_forms_agree_with_mechanical_back_substitution() {
    // same antiderivative from the tidied expression and from the raw
    // Laurent back-substitution, for an off-book coefficient
    for n in 1..=3u32 {
        let case = neil_case(n, 0.7_f64).unwrap();
        let sub = neil_substitution(n, 0.7_f64).unwrap();
        let mechanical = sub.antiderivative_expr();
        assert_pointwise_equal(&case.antiderivative, &mechanical, 0.05, 6.0, 1e-9);
    }
}

#[test]
fn general_substitution_integrates_correctly_for_large_n() {
    // d/dx [scale·P(t(x))] = √(1 + c·x^{2/n}) holds for every n
    for n in [4_u32, 6, 9] {
        let sub = neil_substitution(n, 1.3_f64).unwrap();
        let g = sub.antiderivative_expr().differentiate().unwrap();
        assert_pointwise_equal(&g, &sub.integrand, 0.2, 4.0, 1e-7);
    }
}

#[test]
fn cosh_exercise_is_the_textbook_one() {
    let ex = make_exercise(
        parse::<f64>("exp(x)").unwrap(),
        parse::<f64>("1").unwrap(),
        iv(0.0, 1.0),
        Some(parse("cosh(x)").unwrap()),
        Some(parse("e/2 - 1/(2*e)").unwrap()),
    )
    .unwrap();
    assert_pointwise_equal(&ex.f_prime, &parse("sinh(x)").unwrap(), 0.0, 1.0, 1e-12);
    assert_pointwise_equal(&ex.integrand, &parse("cosh(x)").unwrap(), 0.0, 1.0, 1e-12);
    let exact = ex.exact_answer.as_ref().unwrap().eval(0.0).unwrap();
    assert!((exact - (std::f64::consts::E / 2.0 - 1.0 / (2.0 * std::f64::consts::E))).abs() < 1e-15);
    assert!((exact - 1.1752011936438014).abs() < 1e-12);
}

#[test]
fn exercises_reject_zero_crossings_with_location() {
    let err = make_exercise(
        parse::<f64>("x").unwrap(),
        parse::<f64>("1").unwrap(),
        iv(-1.0, 1.0),
        None,
        None,
    )
    .unwrap_err();
    match err {
        CatalogError::ZeroCrossing { factor, x } => {
            assert_eq!(factor, "m");
            assert!(x.abs() < 1e-9, "located at {x}");
        }
        other => panic!("expected zero crossing, got {other:?}"),
    }

    // crossing between scan points is still caught by the sign flip
    let err = make_exercise(
        parse::<f64>("x - 0.1234567").unwrap(),
        parse::<f64>("1").unwrap(),
        iv(0.0, 1.0),
        None,
        None,
    )
    .unwrap_err();
    assert!(matches!(err, CatalogError::ZeroCrossing { factor: "m", .. }));

    let err = make_exercise(
        parse::<f64>("1").unwrap(),
        parse::<f64>("0-1").unwrap(),
        iv(0.0, 1.0),
        None,
        None,
    )
    .unwrap_err();
    assert!(matches!(err, CatalogError::SignMismatch));
}

#[test]
fn verify_cosh_passes_and_detects_wrong_answers() {
    let problem = builtin_problem::<f64>("cosh").unwrap();
    let report = problem.verify(1e-4).unwrap();
    assert!(report.passed, "{report:?}");
    assert!((report.exact - 1.1752011936438014).abs() < 1e-12);
    assert!(report.integral_residual <= 1e-4);
    assert!(report.polygonal_residual.unwrap() <= 1e-4);
    assert!(report.cross_check_gap <= report.cross_check_limit);

    // deliberately wrong exact answer: off by 0.01
    let wrong = make_exercise(
        parse::<f64>("exp(x)").unwrap(),
        parse::<f64>("1").unwrap(),
        iv(0.0, 1.0),
        Some(parse("cosh(x)").unwrap()),
        Some(parse("e/2 - 1/(2*e) + 0.01").unwrap()),
    )
    .unwrap();
    let report = verify_exercise(&wrong, 1e-4).unwrap();
    assert!(!report.passed);
    assert!(report.integral_residual > 1e-4);
}

#[test]
fn verify_requires_an_exact_answer() {
    let ex = make_exercise(
        parse::<f64>("exp(x)").unwrap(),
        parse::<f64>("1").unwrap(),
        iv(0.0, 1.0),
        None,
        None,
    )
    .unwrap();
    assert!(matches!(
        verify_exercise(&ex, 1e-4),
        Err(CatalogError::MissingExactAnswer)
    ));
}

#[test]
fn registry_is_complete_and_consistent() {
    for name in BUILTIN_PROBLEM_NAMES {
        let problem = builtin_problem::<f64>(name).unwrap();
        assert_eq!(problem.name, name);
        // every registry exact answer is a constant expression
        assert!(problem.exact_answer.is_constant());
        let exact = problem.exact_answer.eval(0.0).unwrap();
        assert!(exact.is_finite() && exact > 0.0);
        match &problem.kind {
            ProblemKind::ClosedForm(case) => case.check().unwrap(),
            ProblemKind::Pythagorean(ex) => {
                assert!(ex.f.is_some());
                assert!(ex.exact_answer.is_some());
            }
        }
    }
    assert!(matches!(
        builtin_problem::<f64>("nope"),
        Err(CatalogError::UnknownProblem(_))
    ));
}

#[test]
fn registry_exact_answers_match_derivations() {
    let expect = [
        ("parabola", 2.0_f64.sqrt() / 2.0 + (1.0 + 2.0_f64.sqrt()).ln() / 2.0),
        ("semicubical", 38.0 / 3.0),
        (
            "cosh",
            std::f64::consts::E / 2.0 - 1.0 / (2.0 * std::f64::consts::E),
        ),
        (
            "pyth2",
            3.0 / 16.0 + 5.0_f64.ln() - 7.0 * 2.0_f64.ln() / 8.0,
        ),
        (
            "pyth3",
            7.0 * std::f64::consts::PI / 16.0 - 5.0 / 3.0 + 9.0 * 3.0_f64.ln() / 2.0
                - 33.0 * 2.0_f64.ln() / 8.0,
        ),
    ];
    for (name, value) in expect {
        let problem = builtin_problem::<f64>(name).unwrap();
        let got = problem.exact_answer.eval(0.0).unwrap();
        assert!((got - value).abs() <= 1e-14 * (1.0 + value), "{name}: {got} vs {value}");
    }
    // x43's exact answer comes from the assembled antiderivative
    let problem = builtin_problem::<f64>("x43").unwrap();
    let got = problem.exact_answer.eval(0.0).unwrap();
    let hand = 9.0 * 2.0_f64.sqrt() / 8.0 - 3.0 * (1.0 + 2.0_f64.sqrt()).ln() / 8.0;
    assert!((got - hand).abs() <= 1e-12, "{got} vs {hand}");
}

/// Random integer-coefficient polynomial, positive on [1, 2].
fn random_positive_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Expr64 {
    let degree = rng.gen_range(0..=max_degree);
    let mut acc = Expr64::constant(rng.gen_range(1..=5) as f64);
    for _ in 0..degree {
        acc = acc * Expr64::variable() + Expr64::constant(rng.gen_range(1..=5) as f64);
    }
    acc
}

#[test]
fn pythagorean_triples_satisfy_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for round in 0..50 {
        let m = random_positive_poly(&mut rng, 3);
        let n = random_positive_poly(&mut rng, 3);
        let k = random_positive_poly(&mut rng, 1);
        let (p, q, r) = pythagorean_triple(&k, &m, &n);
        for x in interior_grid(1.0, 2.0) {
            let (pv, qv, rv) = (
                p.eval(x).unwrap(),
                q.eval(x).unwrap(),
                r.eval(x).unwrap(),
            );
            let residual = (pv * pv + qv * qv - rv * rv).abs();
            assert!(
                residual <= 1e-10 * rv * rv,
                "round {round} at {x}: residual {residual}"
            );
        }

        // the exercise built from (m, n) satisfies 1 + f'² = integrand²
        let ex = make_exercise(m, n, iv(1.0, 2.0), None, None).unwrap();
        for x in interior_grid(1.0, 2.0) {
            let fp = ex.f_prime.eval(x).unwrap();
            let ig = ex.integrand.eval(x).unwrap();
            assert!(ig > 0.0);
            let residual = (1.0 + fp * fp - ig * ig).abs();
            assert!(residual <= 1e-10 * ig * ig, "round {round}: {residual}");
        }
    }
}
