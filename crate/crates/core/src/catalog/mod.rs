//! Curves whose arc-length integrals have elementary closed forms.
//!
//! Two families are covered. Power curves `fⁿ = a·xⁿ⁺¹` (equivalently
//! `f = b·x^{1+1/n}`) reduce, through `s = √c·x^{1/n}` and
//! `t = s + √(1+s²)`, to integrals of Laurent polynomials; see
//! [`neil_reduce`] for the exact reduction and [`neil_case`] for fully
//! assembled antiderivatives. And for any two functions `m`, `n` that
//! stay nonzero, `f' = m/2n − n/2m` makes `√(1+f'²) = m/2n + n/2m` — a
//! Pythagorean triple of functions — which [`make_exercise`] turns into
//! verifiable exercises.
//!
//! A registry of built-in problems ([`builtin_problem`]) carries the
//! classic worked examples with their exact answers.

mod laurent;

pub use laurent::{neil_integrand, neil_reduce, LaurentPoly};

use thiserror::Error;

use crate::expr::{parse, DiffError, EvalError, Expr};
use crate::interval::Interval;
use crate::quadrature::{euler_sum, QuadratureError};
use crate::rectify::{polygonal_length, RectifyError};
use crate::scalar::Scalar;

/// Euler-sum resolution used by exercise verification.
pub const VERIFY_EULER_SUBDIVISIONS: u64 = 1_000_000;
/// Polygonal resolution used for the curve itself during verification.
pub const VERIFY_POLYGONAL_SUBDIVISIONS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("closed forms are assembled only for n in 1..=3, got n = {n}; use the reduction data")]
    UnsupportedCaseIndex { n: u32 },
    #[error("the curve family index must be at least 1")]
    InvalidFamilyIndex,
    #[error("curve coefficient must be a finite positive number, got {a}")]
    InvalidCoefficient { a: f64 },
    #[error("`{factor}` is zero or changes sign near x = {x}")]
    ZeroCrossing { factor: &'static str, x: f64 },
    #[error("m and n take opposite signs on the interval; the integrand would be negative")]
    SignMismatch,
    #[error("antiderivative check failed at x = {x}: |G' - integrand| = {residual:.3e}")]
    AntiderivativeMismatch { x: f64, residual: f64 },
    #[error("pythagorean identity residual {residual:.3e} at x = {x}")]
    IdentityMismatch { x: f64, residual: f64 },
    #[error("exercise has no exact answer to verify against")]
    MissingExactAnswer,
    #[error("exact answer must be a constant expression")]
    ExactAnswerNotConstant,
    #[error("tolerance must be a finite positive number, got {tol}")]
    InvalidTolerance { tol: f64 },
    #[error("unknown problem `{0}`; built-ins: parabola, semicubical, x43, cosh, pyth2, pyth3")]
    UnknownProblem(String),
    #[error("evaluation failed at x = {x}: {source}")]
    Eval {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Rectify(#[from] RectifyError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Where a closed-form case is valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidDomain<T> {
    AllReals,
    /// `x > bound` (the curve families need `x ≥ 0`; sampling stays
    /// strictly inside).
    GreaterThan(T),
}

impl<T: Scalar> ValidDomain<T> {
    /// A representative range for numeric checks, strictly inside the
    /// domain.
    fn sample_range(&self) -> (T, T) {
        let ten = T::from_f64_lossy(10.0);
        match self {
            ValidDomain::AllReals => (-ten, ten),
            ValidDomain::GreaterThan(lo) => (*lo, *lo + ten),
        }
    }
}

/// A curve `f` with its arc-length integrand `√(1+f'²)` and an
/// elementary antiderivative `G` of that integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCase<T> {
    pub name: String,
    pub f: Expr<T>,
    pub integrand: Expr<T>,
    pub antiderivative: Expr<T>,
    pub valid_domain: ValidDomain<T>,
}

impl<T: Scalar> ClosedFormCase<T> {
    /// Numeric soundness check: `G'` must match the integrand to 1e-8
    /// relative at 100 points of the valid domain.
    pub fn check(&self) -> Result<(), CatalogError> {
        let g_prime = self.antiderivative.differentiate()?;
        let (lo, hi) = self.valid_domain.sample_range();
        let step = (hi - lo) / T::from_f64_lossy(100.0);
        let half = T::from_f64_lossy(0.5);
        let tol = T::from_f64_lossy(1e-8);
        for i in 0..100u64 {
            let x = lo + (T::from_index(i) + half) * step;
            let want = eval_at(&self.integrand, x)?;
            let got = eval_at(&g_prime, x)?;
            let residual = (got - want).abs();
            if residual > tol * (T::one() + want.abs()) {
                return Err(CatalogError::AntiderivativeMismatch {
                    x: x.as_f64(),
                    residual: residual.as_f64(),
                });
            }
        }
        Ok(())
    }
}

/// The substitution chain for a power curve, for any family index.
///
/// `f = b·x^{1+1/n}` has `√(1+f'²) = √(1+c·x^{2/n})`, and with
/// `s = √c·x^{1/n}`, `t = s + √(1+s²)`:
///
/// ```text
/// ∫ √(1+c·x^{2/n}) dx = scale · P(t(x)),   P = neil_reduce(n),
/// ```
///
/// where `scale = n·c^{-n/2}`. [`Self::antiderivative_expr`] performs the
/// back-substitution mechanically; [`neil_case`] produces the hand-tidied
/// forms for `n ≤ 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeilSubstitution<T> {
    pub n: u32,
    /// Coefficient of the explicit curve `f = b·x^{1+1/n}`.
    pub b: T,
    /// Integrand constant: `c = b²(1+1/n)²`.
    pub c: T,
    /// Outer factor `n·c^{-n/2}` picked up by the substitution.
    pub scale: T,
    pub f: Expr<T>,
    pub integrand: Expr<T>,
    pub laurent: LaurentPoly,
}

impl<T: Scalar> NeilSubstitution<T> {
    /// `scale · P(t(x))` with `t(x) = s + √(1+s²)`, `s = √c·x^{1/n}`:
    /// a valid antiderivative for every family index, just not arranged
    /// the way a textbook would print it.
    pub fn antiderivative_expr(&self) -> Expr<T> {
        let s = s_expr(self.c, self.n);
        let hyp = (Expr::Constant(T::one()) + s_squared_expr(self.c, self.n)).sqrt();
        let t = s + hyp;
        (Expr::Constant(self.scale) * self.laurent.to_expr(&t)).simplify()
    }
}

/// A generated exercise: find the arc length of `f` when
/// `f' = m/2n − n/2m`, so that the integrand is `m/2n + n/2m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Exercise<T> {
    pub m: Expr<T>,
    pub n: Expr<T>,
    pub f_prime: Expr<T>,
    pub integrand: Expr<T>,
    pub f: Option<Expr<T>>,
    pub interval: Interval<T>,
    pub exact_answer: Option<Expr<T>>,
}

/// Outcome of numeric verification of an exercise or registry problem.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<T> {
    /// The claimed exact answer, evaluated.
    pub exact: T,
    /// Euler sum of the integrand at [`VERIFY_EULER_SUBDIVISIONS`].
    pub euler: T,
    /// Euler sum at twice that resolution.
    pub euler_refined: T,
    /// `|euler − exact|`.
    pub integral_residual: T,
    /// `|L_n(f) − exact|` when the curve itself is available.
    pub polygonal_residual: Option<T>,
    /// Fitted constant of the `C/n` left-sum error model.
    pub rate_constant: T,
    /// `|euler_refined − euler|`.
    pub cross_check_gap: T,
    /// Twice the gap the `C/n` model predicts (plus a rounding floor).
    pub cross_check_limit: T,
    pub passed: bool,
}

fn eval_at<T: Scalar>(e: &Expr<T>, x: T) -> Result<T, CatalogError> {
    e.eval(x).map_err(|source| CatalogError::Eval {
        x: x.as_f64(),
        source,
    })
}

fn s_expr<T: Scalar>(c: T, n: u32) -> Expr<T> {
    let root = Expr::Constant(c.sqrt());
    let power = Expr::<T>::variable().pow(Expr::Constant(
        T::one() / T::from_index(u64::from(n)),
    ));
    (root * power).simplify()
}

/// `s² = c·x^{2/n}`, built directly so the power collapses for n ≤ 2.
fn s_squared_expr<T: Scalar>(c: T, n: u32) -> Expr<T> {
    let power = Expr::<T>::variable().pow(Expr::Constant(
        T::from_f64_lossy(2.0) / T::from_index(u64::from(n)),
    ));
    (Expr::Constant(c) * power).simplify()
}

/// The substitution data for `fⁿ = a·xⁿ⁺¹`, valid for every `n ≥ 1`.
pub fn neil_substitution<T: Scalar>(
    n: u32,
    a_coeff: T,
) -> Result<NeilSubstitution<T>, CatalogError> {
    if n == 0 {
        return Err(CatalogError::InvalidFamilyIndex);
    }
    if !(a_coeff.is_finite() && a_coeff > T::zero()) {
        return Err(CatalogError::InvalidCoefficient {
            a: a_coeff.as_f64(),
        });
    }
    let n_t = T::from_index(u64::from(n));
    let b = a_coeff.powf(T::one() / n_t);
    let slope_factor = T::one() + T::one() / n_t;
    let c = b * b * slope_factor * slope_factor;
    let scale = n_t * c.powf(-n_t / T::from_f64_lossy(2.0));

    let f = (Expr::Constant(b)
        * Expr::<T>::variable().pow(Expr::Constant(T::one() + T::one() / n_t)))
    .simplify();
    let integrand = (Expr::Constant(T::one()) + s_squared_expr(c, n))
        .sqrt()
        .simplify();

    Ok(NeilSubstitution {
        n,
        b,
        c,
        scale,
        f,
        integrand,
        laurent: neil_reduce(n),
    })
}

/// Fully assembled closed form for the cases `n ∈ {1, 2, 3}` of the
/// power-curve family `fⁿ = a·xⁿ⁺¹`.
///
/// The returned case has passed its own [`ClosedFormCase::check`]. For
/// larger `n` use [`neil_substitution`], which carries the reduction as
/// data instead of a flattened expression.
pub fn neil_case<T: Scalar>(n: u32, a_coeff: T) -> Result<ClosedFormCase<T>, CatalogError> {
    if n > 3 {
        return Err(CatalogError::UnsupportedCaseIndex { n });
    }
    let sub = neil_substitution(n, a_coeff)?;
    let one = || Expr::Constant(T::one());
    let two = || Expr::Constant(T::from_f64_lossy(2.0));
    let scale = Expr::Constant(sub.scale);
    let s = || s_expr(sub.c, n);
    let s2 = || s_squared_expr(sub.c, n);
    let hyp = || (one() + s2()).sqrt();

    let antiderivative = match n {
        // s·√(1+s²)/2 + log(s+√(1+s²))/2
        1 => {
            scale
                * (s() * hyp() / two()
                    + (s() + hyp()).log() / two())
        }
        // (1+s²)^{3/2}/3, already elementary since s² is linear in x
        2 => {
            scale
                * (one() + s2()).pow(Expr::Constant(T::from_f64_lossy(1.5)))
                / Expr::Constant(T::from_f64_lossy(3.0))
        }
        // s(2s²+1)·√(1+s²)/8 − log(s+√(1+s²))/8
        3 => {
            let eight = || Expr::Constant(T::from_f64_lossy(8.0));
            scale
                * (s() * (two() * s2() + one()) * hyp() / eight()
                    - (s() + hyp()).log() / eight())
        }
        _ => unreachable!(),
    };

    let case = ClosedFormCase {
        name: format!("neil-{n}"),
        f: sub.f,
        integrand: sub.integrand,
        antiderivative: antiderivative.simplify(),
        valid_domain: if n == 1 {
            ValidDomain::AllReals
        } else {
            ValidDomain::GreaterThan(T::zero())
        },
    };
    case.check()?;
    Ok(case)
}

/// The triple `(k(m²−n²), 2kmn, k(m²+n²))`, which satisfies
/// `p² + q² = r²` identically. With polynomial `k`, `m`, `n` this
/// produces integer-coefficient Pythagorean triples of functions.
pub fn pythagorean_triple<T: Scalar>(
    k: &Expr<T>,
    m: &Expr<T>,
    n: &Expr<T>,
) -> (Expr<T>, Expr<T>, Expr<T>) {
    let two = Expr::Constant(T::from_f64_lossy(2.0));
    let sq = |e: &Expr<T>| e.clone().pow(Expr::Constant(T::from_f64_lossy(2.0)));
    let p = (k.clone() * (sq(m) - sq(n))).simplify();
    let q = (two * k.clone() * m.clone() * n.clone()).simplify();
    let r = (k.clone() * (sq(m) + sq(n))).simplify();
    (p, q, r)
}

/// Builds the exercise with `f' = m/2n − n/2m` over `iv`.
///
/// `m` and `n` must be nonzero across the interval (checked on a
/// 1001-point scan) and of the same sign, so the integrand
/// `m/2n + n/2m` is positive. The curve `f` and the exact answer are
/// caller-supplied; no symbolic integration is attempted.
pub fn make_exercise<T: Scalar>(
    m: Expr<T>,
    n: Expr<T>,
    iv: Interval<T>,
    f: Option<Expr<T>>,
    exact_answer: Option<Expr<T>>,
) -> Result<Exercise<T>, CatalogError> {
    const SCAN_POINTS: u64 = 1000; // 1001 samples including both endpoints
    let step = iv.width() / T::from_index(SCAN_POINTS);
    let mut sign_m = T::zero();
    let mut sign_n = T::zero();
    for i in 0..=SCAN_POINTS {
        let x = iv.a() + T::from_index(i) * step;
        let mv = eval_at(&m, x)?;
        let nv = eval_at(&n, x)?;
        for (value, sign, factor) in [(mv, &mut sign_m, "m"), (nv, &mut sign_n, "n")] {
            if value == T::zero() {
                return Err(CatalogError::ZeroCrossing {
                    factor,
                    x: x.as_f64(),
                });
            }
            let s = value.signum();
            if *sign == T::zero() {
                *sign = s;
            } else if *sign != s {
                return Err(CatalogError::ZeroCrossing {
                    factor,
                    x: x.as_f64(),
                });
            }
        }
    }
    if sign_m != sign_n {
        return Err(CatalogError::SignMismatch);
    }

    let two = || Expr::Constant(T::from_f64_lossy(2.0));
    let half_ratio = |num: &Expr<T>, den: &Expr<T>| num.clone() / (two() * den.clone());
    let f_prime = (half_ratio(&m, &n) - half_ratio(&n, &m)).simplify();
    let integrand = (half_ratio(&m, &n) + half_ratio(&n, &m)).simplify();

    // 1 + f'² = integrand², pointwise to 1e-10 relative
    let tol = T::from_f64_lossy(1e-10);
    let check_step = iv.width() / T::from_f64_lossy(100.0);
    let half = T::from_f64_lossy(0.5);
    for i in 0..100u64 {
        let x = iv.a() + (T::from_index(i) + half) * check_step;
        let fp = eval_at(&f_prime, x)?;
        let ig = eval_at(&integrand, x)?;
        let residual = ((T::one() + fp * fp) - ig * ig).abs();
        if residual > tol * ig * ig {
            return Err(CatalogError::IdentityMismatch {
                x: x.as_f64(),
                residual: residual.as_f64(),
            });
        }
    }

    Ok(Exercise {
        m,
        n,
        f_prime,
        integrand,
        f,
        interval: iv,
        exact_answer,
    })
}

/// Verifies an exercise against its exact answer.
///
/// The numeric side is the Euler sum of the integrand at
/// [`VERIFY_EULER_SUBDIVISIONS`], cross-checked against twice the
/// resolution (agreement within twice the fitted `C/n` rate), plus the
/// polygonal length of `f` when the curve is present. Passes when every
/// residual is within `tol`.
pub fn verify_exercise<T: Scalar>(
    ex: &Exercise<T>,
    tol: T,
) -> Result<VerifyReport<T>, CatalogError> {
    let exact = ex
        .exact_answer
        .as_ref()
        .ok_or(CatalogError::MissingExactAnswer)?;
    verify_numeric(&ex.integrand, ex.f.as_ref(), ex.interval, exact, tol)
}

fn verify_numeric<T: Scalar>(
    integrand: &Expr<T>,
    f: Option<&Expr<T>>,
    iv: Interval<T>,
    exact_answer: &Expr<T>,
    tol: T,
) -> Result<VerifyReport<T>, CatalogError> {
    if !(tol.is_finite() && tol > T::zero()) {
        return Err(CatalogError::InvalidTolerance { tol: tol.as_f64() });
    }
    if !exact_answer.is_constant() {
        return Err(CatalogError::ExactAnswerNotConstant);
    }
    let exact = eval_at(exact_answer, T::zero())?;

    // Fit the C/n error model from coarse resolutions: |S_n − S_2n| ≈ C/(2n).
    let mut rate_constant = T::zero();
    for coarse in [100u64, 1_000, 10_000] {
        let s = euler_sum(integrand, iv, coarse)?;
        let s2 = euler_sum(integrand, iv, 2 * coarse)?;
        rate_constant = rate_constant.max(T::from_index(2 * coarse) * (s - s2).abs());
    }

    let euler = euler_sum(integrand, iv, VERIFY_EULER_SUBDIVISIONS)?;
    let euler_refined = euler_sum(integrand, iv, 2 * VERIFY_EULER_SUBDIVISIONS)?;
    let cross_check_gap = (euler_refined - euler).abs();
    // predicted gap is C/(2n); allow twice that, with a floor for the
    // rounding of sums whose error model is essentially zero
    let predicted = rate_constant / T::from_index(2 * VERIFY_EULER_SUBDIVISIONS);
    let floor = T::epsilon() * T::from_f64_lossy(32.0) * (T::one() + euler.abs());
    let cross_check_limit = T::from_f64_lossy(2.0) * predicted + floor;

    let integral_residual = (euler - exact).abs();
    let polygonal_residual = match f {
        Some(f) => {
            let l = polygonal_length(f, iv, VERIFY_POLYGONAL_SUBDIVISIONS)?;
            Some((l - exact).abs())
        }
        None => None,
    };

    let passed = integral_residual <= tol
        && polygonal_residual.map_or(true, |r| r <= tol)
        && cross_check_gap <= cross_check_limit;

    Ok(VerifyReport {
        exact,
        euler,
        euler_refined,
        integral_residual,
        polygonal_residual,
        rate_constant,
        cross_check_gap,
        cross_check_limit,
        passed,
    })
}

/// How a built-in problem is backed.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind<T> {
    ClosedForm(ClosedFormCase<T>),
    Pythagorean(Exercise<T>),
}

/// A registry problem: a curve, its integrand, an interval and the exact
/// arc length, ready for numeric verification.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem<T> {
    pub name: &'static str,
    pub f: Expr<T>,
    pub integrand: Expr<T>,
    pub interval: Interval<T>,
    pub exact_answer: Expr<T>,
    pub kind: ProblemKind<T>,
}

impl<T: Scalar> Problem<T> {
    pub fn verify(&self, tol: T) -> Result<VerifyReport<T>, CatalogError> {
        verify_numeric(
            &self.integrand,
            Some(&self.f),
            self.interval,
            &self.exact_answer,
            tol,
        )
    }
}

/// Names accepted by [`builtin_problem`].
pub const BUILTIN_PROBLEM_NAMES: [&str; 6] = [
    "parabola",
    "semicubical",
    "x43",
    "cosh",
    "pyth2",
    "pyth3",
];

/// The built-in worked problems.
pub fn builtin_problem<T: Scalar>(name: &str) -> Result<Problem<T>, CatalogError> {
    let p = |text: &str| -> Expr<T> {
        parse(text).expect("registry expressions are well-formed")
    };
    let iv = |a: f64, b: f64| {
        Interval::new(T::from_f64_lossy(a), T::from_f64_lossy(b))
            .expect("registry intervals are well-formed")
    };
    match name {
        // f = x²/2 on [0,1]; the case n = 1, a = 1/2 of the power family
        "parabola" => {
            let case = neil_case(1, T::from_f64_lossy(0.5))?;
            Ok(Problem {
                name: "parabola",
                f: p("x^2/2"),
                integrand: p("sqrt(1+x^2)"),
                interval: iv(0.0, 1.0),
                exact_answer: p("sqrt(2)/2 + log(1+sqrt(2))/2"),
                kind: ProblemKind::ClosedForm(case),
            })
        }
        // f = 2x^{3/2}/3 on [3,8]; n = 2, a = (2/3)² — exact length 38/3
        "semicubical" => {
            let a = T::from_f64_lossy(4.0) / T::from_f64_lossy(9.0);
            let case = neil_case(2, a)?;
            Ok(Problem {
                name: "semicubical",
                f: p("2*x^(3/2)/3"),
                integrand: p("sqrt(1+x)"),
                interval: iv(3.0, 8.0),
                exact_answer: p("38/3"),
                kind: ProblemKind::ClosedForm(case),
            })
        }
        // f = 3x^{4/3}/4 on [0,1]; n = 3, a = (3/4)³
        "x43" => {
            let a = T::from_f64_lossy(27.0 / 64.0);
            let case = neil_case(3, a)?;
            let g = &case.antiderivative;
            let exact = g.substitute(&Expr::Constant(T::one()))
                - g.substitute(&Expr::Constant(T::zero()));
            Ok(Problem {
                name: "x43",
                f: p("3*x^(4/3)/4"),
                integrand: p("sqrt(1+x^(2/3))"),
                interval: iv(0.0, 1.0),
                exact_answer: exact,
                kind: ProblemKind::ClosedForm(case),
            })
        }
        // f = cosh x on [0,1] via m = eˣ, n = 1; length e/2 − 1/(2e)
        "cosh" => {
            let ex = make_exercise(
                p("exp(x)"),
                p("1"),
                iv(0.0, 1.0),
                Some(p("cosh(x)")),
                Some(p("e/2 - 1/(2*e)")),
            )?;
            Ok(problem_from_exercise("cosh", ex))
        }
        // m = 4x, n = x²+1 on [1,2]; length 3/16 + log 5 − 7·log 2/8
        "pyth2" => {
            let ex = make_exercise(
                p("4*x"),
                p("x^2+1"),
                iv(1.0, 2.0),
                Some(p("log(2*x^2+2) - x^2/16 - log(x)/8")),
                Some(p("3/16 + log(5) - 7*log(2)/8")),
            )?;
            Ok(problem_from_exercise("pyth2", ex))
        }
        // m = (x+2)², n = (x+1)(x²+1) on [0,1];
        // length 7π/16 − 5/3 + 9·log 3/2 − 33·log 2/8
        "pyth3" => {
            let ex = make_exercise(
                p("(x+2)^2"),
                p("(x+1)*(x^2+1)"),
                iv(0.0, 1.0),
                Some(p(
                    "log(x^2+1)/8 + 7*atan(x)/4 - x^2/4 + 3*x/2 - 5/(2*(x+2)) - 9*log(x+2)/2",
                )),
                Some(p("7*pi/16 - 5/3 + 9*log(3)/2 - 33*log(2)/8")),
            )?;
            Ok(problem_from_exercise("pyth3", ex))
        }
        other => Err(CatalogError::UnknownProblem(other.to_string())),
    }
}

fn problem_from_exercise<T: Scalar>(name: &'static str, ex: Exercise<T>) -> Problem<T> {
    Problem {
        name,
        f: ex.f.clone().expect("registry exercises carry their curve"),
        integrand: ex.integrand.clone(),
        interval: ex.interval,
        exact_answer: ex
            .exact_answer
            .clone()
            .expect("registry exercises carry their exact answer"),
        kind: ProblemKind::Pythagorean(ex),
    }
}
