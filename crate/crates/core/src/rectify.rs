//! Polygonal arc lengths with certified error bounds.
//!
//! For `f` on `[a, b]` and a uniform subdivision into `n` parts,
//! the polygonal length is
//!
//! ```text
//! L_n = Σ_{k=0}^{n-1} √(Δx² + (f(x_{k+1}) − f(x_k))²),   Δx = (b−a)/n.
//! ```
//!
//! When `|f''| ≤ M` on `(a, b)`, the approximation satisfies
//! `|L − L_n| ≤ M(b−a)²/(2n)`, which both certifies a computed `L_n`
//! and, inverted, picks the subdivision count for a target tolerance.
//!
//! Sums run left-to-right with Kahan compensation, so results are
//! deterministic and must not depend on any internal parallel
//! decomposition.

use thiserror::Error;

use crate::expr::{DiffError, EvalError, Expr};
use crate::interval::{Interval, InvalidInterval};
use crate::kahan::KahanSum;
use crate::scalar::Scalar;

/// Hard ceiling on subdivision counts; tolerances that would require more
/// are rejected instead of attempting an infeasible sum.
pub const MAX_SUBDIVISIONS: u64 = 1_000_000_000;

/// Sample count used by [`arc_length`] when it has to estimate `M` itself.
pub const M_ESTIMATE_SAMPLES: u64 = 10_001;

/// Safety factor applied to the sampled maximum of `|f''|`.
const M_SAFETY_FACTOR: f64 = 1.25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RectifyError {
    #[error(transparent)]
    Interval(#[from] InvalidInterval),
    #[error("subdivision count must be positive")]
    ZeroSubdivisions,
    #[error("subdivision list must be nonempty and strictly increasing")]
    BadSubdivisionList,
    #[error("sample count must be positive")]
    ZeroSamples,
    #[error("M must be a finite nonnegative number, got {m}")]
    InvalidM { m: f64 },
    #[error("tolerance must be a finite positive number, got {tol}")]
    InvalidTolerance { tol: f64 },
    #[error("tolerance needs about {required:.3e} subdivisions, over the cap of {cap}")]
    SubdivisionCap { required: f64, cap: u64 },
    #[error("evaluation failed at x = {x}: {source}")]
    Eval {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error(transparent)]
    Diff(#[from] DiffError),
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyResult<T> {
    pub n: u64,
    pub delta_x: T,
    /// The polygonal length `L_n`.
    pub length: T,
    /// `M(b−a)²/(2n)` when the caller supplied an `M`.
    pub bound: Option<T>,
}

/// Where the `M` used by [`arc_length`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSource {
    User,
    Sampled,
}

/// A sampled upper bound for `sup |f''|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MEstimate<T> {
    /// `1.25 ×` the sampled maximum of `|f''|` on a midpoint grid.
    pub value: T,
    /// Set when the sampled maximum sits in the first or last grid cell
    /// and grows toward the endpoint; `sup |f''|` may be unbounded there
    /// and the estimate untrustworthy.
    pub boundary_warning: bool,
}

/// Result of a tolerance-driven arc-length computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<T> {
    /// Convergence trace, ordered by increasing `n`; the last row is the
    /// one at `n_used`.
    pub rows: Vec<PolyResult<T>>,
    /// The final polygonal length `L_{n_used}`.
    pub estimate: T,
    pub n_used: u64,
    /// `M_used·(b−a)²/(2·n_used)`.
    pub bound_used: T,
    pub m_used: T,
    pub m_source: MSource,
    /// Carried over from [`estimate_m`] when `M` was sampled.
    pub m_boundary_warning: bool,
}

fn eval_at<T: Scalar>(f: &Expr<T>, x: T) -> Result<T, RectifyError> {
    f.eval(x).map_err(|source| RectifyError::Eval {
        x: x.as_f64(),
        source,
    })
}

/// The `n`-th polygonal length of `f` over `iv`.
///
/// `f` is evaluated at the `n+1` grid points `x_k = a + kΔx`; the chord
/// lengths are accumulated left-to-right with compensation.
pub fn polygonal_length<T: Scalar>(
    f: &Expr<T>,
    iv: Interval<T>,
    n: u64,
) -> Result<T, RectifyError> {
    if n == 0 {
        return Err(RectifyError::ZeroSubdivisions);
    }
    let a = iv.a();
    let dx = iv.width() / T::from_index(n);
    let mut sum = KahanSum::new();
    let mut prev = eval_at(f, a)?;
    for k in 1..=n {
        let x = a + T::from_index(k) * dx;
        let y = eval_at(f, x)?;
        let dy = y - prev;
        sum.add((dx * dx + dy * dy).sqrt());
        prev = y;
    }
    Ok(sum.value())
}

/// Polygonal lengths for each `n` in `ns` (nonempty, strictly increasing).
///
/// The `bound` field is filled only when the caller supplies `m`.
pub fn polygonal_table<T: Scalar>(
    f: &Expr<T>,
    iv: Interval<T>,
    ns: &[u64],
    m: Option<T>,
) -> Result<Vec<PolyResult<T>>, RectifyError> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RectifyError::BadSubdivisionList);
    }
    if let Some(m) = m {
        validate_m(m)?;
    }
    ns.iter()
        .map(|&n| {
            let length = polygonal_length(f, iv, n)?;
            Ok(PolyResult {
                n,
                delta_x: iv.width() / T::from_index(n),
                length,
                bound: m.map(|m| error_bound(m, iv, n)),
            })
        })
        .collect()
}

/// The a-priori bound `M(b−a)²/(2n)` on `|L − L_n|`, valid whenever
/// `|f''| ≤ M` on the open interval.
pub fn error_bound<T: Scalar>(m: T, iv: Interval<T>, n: u64) -> T {
    let w = iv.width();
    m * w * w / (T::from_f64_lossy(2.0) * T::from_index(n))
}

/// Least `n` with `M(b−a)²/(2n) ≤ tol`, that is `⌈M(b−a)²/(2·tol)⌉`,
/// at minimum 1 and capped at [`MAX_SUBDIVISIONS`].
pub fn min_subdivisions<T: Scalar>(m: T, iv: Interval<T>, tol: T) -> Result<u64, RectifyError> {
    validate_m(m)?;
    validate_tol(tol)?;
    let w = iv.width();
    let required = (m * w * w / (T::from_f64_lossy(2.0) * tol)).ceil();
    if required <= T::one() {
        return Ok(1);
    }
    if required > T::from_index(MAX_SUBDIVISIONS) {
        return Err(RectifyError::SubdivisionCap {
            required: required.as_f64(),
            cap: MAX_SUBDIVISIONS,
        });
    }
    Ok(required
        .to_u64()
        .expect("capped subdivision count fits in u64"))
}

/// Samples `|f''|` on the midpoint grid `x_j = a + (j+½)(b−a)/samples`
/// and returns `1.25 ×` the maximum.
///
/// Midpoints keep sampling strictly inside `(a, b)`, where the bound only
/// needs `f''` to exist; the safety factor guards against peaks between
/// samples. See [`MEstimate::boundary_warning`] for the endpoint caveat.
pub fn estimate_m<T: Scalar>(
    f: &Expr<T>,
    iv: Interval<T>,
    samples: u64,
) -> Result<MEstimate<T>, RectifyError> {
    if samples == 0 {
        return Err(RectifyError::ZeroSamples);
    }
    let f2 = f.differentiate()?.differentiate()?;
    let a = iv.a();
    let step = iv.width() / T::from_index(samples);
    let half = T::from_f64_lossy(0.5);

    let mut max_value = T::zero();
    let mut max_index = 0u64;
    let mut first = T::zero();
    let mut second = T::zero();
    let mut prev = T::zero();
    let mut last = T::zero();
    for j in 0..samples {
        let x = a + (T::from_index(j) + half) * step;
        let v = eval_at(&f2, x)?.abs();
        if j == 0 {
            first = v;
        }
        if j == 1 {
            second = v;
        }
        prev = last;
        last = v;
        if v > max_value {
            max_value = v;
            max_index = j;
        }
    }
    let boundary_warning = samples > 1
        && ((max_index == 0 && first > second)
            || (max_index == samples - 1 && last > prev));
    Ok(MEstimate {
        value: T::from_f64_lossy(M_SAFETY_FACTOR) * max_value,
        boundary_warning,
    })
}

/// Computes the arc length of `f` over `iv` to the requested tolerance.
///
/// Uses the supplied `M` (or [`estimate_m`] with [`M_ESTIMATE_SAMPLES`])
/// and [`min_subdivisions`] to pick `n`, then evaluates `L_n`. Whenever
/// the `M` used truly dominates `sup |f''|`, the returned estimate is
/// within `bound_used ≤ tol` of the exact arc length.
pub fn arc_length<T: Scalar>(
    f: &Expr<T>,
    iv: Interval<T>,
    tol: T,
    m: Option<T>,
) -> Result<ConvergenceReport<T>, RectifyError> {
    validate_tol(tol)?;
    let (m_used, m_source, m_boundary_warning) = match m {
        Some(v) => {
            validate_m(v)?;
            (v, MSource::User, false)
        }
        None => {
            let est = estimate_m(f, iv, M_ESTIMATE_SAMPLES)?;
            (est.value, MSource::Sampled, est.boundary_warning)
        }
    };
    let n_used = min_subdivisions(m_used, iv, tol)?;

    // Short doubling trace up to n_used; the last row is the estimate.
    let mut ns: Vec<u64> = [n_used / 8, n_used / 4, n_used / 2, n_used]
        .into_iter()
        .filter(|&n| n > 0)
        .collect();
    ns.dedup();
    let rows = polygonal_table(f, iv, &ns, Some(m_used))?;
    let last = rows.last().expect("at least the n_used row");

    Ok(ConvergenceReport {
        estimate: last.length,
        n_used,
        bound_used: error_bound(m_used, iv, n_used),
        m_used,
        m_source,
        m_boundary_warning,
        rows,
    })
}

fn validate_m<T: Scalar>(m: T) -> Result<(), RectifyError> {
    if m.is_finite() && m >= T::zero() {
        Ok(())
    } else {
        Err(RectifyError::InvalidM { m: m.as_f64() })
    }
}

fn validate_tol<T: Scalar>(tol: T) -> Result<(), RectifyError> {
    if tol.is_finite() && tol > T::zero() {
        Ok(())
    } else {
        Err(RectifyError::InvalidTolerance { tol: tol.as_f64() })
    }
}

/// Formats a value to four decimals, rounding half away from zero.
///
/// This is the display rule for all table output; values are formatted
/// from their digits, not re-rounded through `format!`.
pub fn display_4dp<T: Scalar>(v: T) -> String {
    let x = v.as_f64();
    if !x.is_finite() {
        return x.to_string();
    }
    let scaled = (x.abs() * 1e4 + 0.5).floor();
    if scaled >= 9.0e15 {
        // beyond exact integer arithmetic; fall back to standard formatting
        return format!("{x:.4}");
    }
    let units = scaled as u64;
    let sign = if x < 0.0 { "-" } else { "" };
    format!("{sign}{}.{:04}", units / 10_000, units % 10_000)
}
