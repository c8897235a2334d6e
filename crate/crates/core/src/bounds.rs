//! Closed-form bounds and the single-crossing machinery behind the
//! Bernoulli `L^q` estimates.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::pmf::Pmf;
use crate::quadrature::integrate;
use crate::renyi::{delta, RenyiOrder};
use crate::report::IneqReport;
use crate::spectral::char_modulus;

/// Min-EPI constant for arbitrary integer-valued summands.
pub const MIN_EPI_CONSTANT: f64 = 1.0 / 22.0;
/// Sharper Min-EPI constant `1/(16 + 36/π²)`.
pub const MIN_EPI_IMPROVED: f64 = 1.0 / (16.0 + 36.0 / (PI * PI));
/// Min-EPI constant when every factor has a mass of at least 1/2.
pub const SMALL_VALUE_CONSTANT: f64 = PI * PI / 36.0;
/// Reverse Min-EPI constant for Poisson-binomial factors.
pub const REVERSAL_CONSTANT: f64 = 6.0;
/// `Δ∞ ≤ 12 Var`.
pub const BC_CONSTANT: f64 = 12.0;
/// `Δ∞ ≥ 2 Var` for symmetric log-concave laws.
pub const BMM_CONSTANT: f64 = 2.0;
/// Exponent constant in `|φ(t)| ≤ exp(-Δ∞ t² / 24)`.
pub const EXP_CHARFN_CONSTANT: f64 = 1.0 / 24.0;

/// Where the two branches of [`gauss_ratio_bound`] meet: `√(3π/(6−π))`.
pub fn gauss_bound_switch() -> f64 {
    (3.0 * PI / (6.0 - PI)).sqrt()
}

/// `(1/z) ∫_0^z e^{-t²/2} dt`, equal to 1 at `z = 0` and even in `z`.
pub fn gauss_ratio(z: f64) -> f64 {
    let z = z.abs();
    if z < 1e-4 {
        let z2 = z * z;
        // 1 - z²/6 + z⁴/40 - z⁶/336
        1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * 3.0 * (1.0 - z2 * 5.0 / 42.0))
    } else {
        (PI / 2.0).sqrt() * libm::erf(z / std::f64::consts::SQRT_2) / z
    }
}

/// `min{1/√(1+z²/3), √(π/(2z²))}`.
pub fn gauss_ratio_bound(z: f64) -> f64 {
    let z = z.abs();
    let a = 1.0 / (1.0 + z * z / 3.0).sqrt();
    if z == 0.0 {
        a
    } else {
        a.min((PI / 2.0).sqrt() / z)
    }
}

/// `Φ(c) = gauss_ratio(√(6c))`, for `c ≥ 0`.
pub fn phi(c: f64) -> f64 {
    gauss_ratio((6.0 * c).sqrt())
}

/// Upper bound on `(1/2π)∫|φ|^q` for a Bernoulli law of variance `σ²`.
pub fn bernoulli_charfn_bound(sigma2: f64, q: f64) -> Result<f64> {
    check_range("sigma2", sigma2, (0.0..=0.25).contains(&sigma2), "0 <= sigma2 <= 1/4")?;
    check_range("q", q, q >= 1.0, "q >= 1")?;
    Ok(phi(sigma2 * q))
}

/// A named real function on `[0, π]`.
pub struct BoundFn {
    pub name: String,
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl BoundFn {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        BoundFn {
            name: name.into(),
            f: Box::new(f),
        }
    }

    /// `√((1−λ) + λ cos t)`, the Bernoulli characteristic modulus.
    pub fn v_lambda(lambda: f64) -> Result<Self> {
        check_range("lambda", lambda, (0.0..=0.5).contains(&lambda), "0 <= lambda <= 1/2")?;
        Ok(Self::new(format!("v_{lambda}"), move |t: f64| {
            ((1.0 - lambda) + lambda * t.cos()).max(0.0).sqrt()
        }))
    }

    /// `exp(−3λt²/(2π²))`.
    pub fn w_lambda(lambda: f64) -> Result<Self> {
        check_range("lambda", lambda, (0.0..=0.5).contains(&lambda), "0 <= lambda <= 1/2")?;
        let k = 3.0 * lambda / (2.0 * PI * PI);
        Ok(Self::new(format!("w_{lambda}"), move |t: f64| (-k * t * t).exp()))
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

impl fmt::Debug for BoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundFn").field("name", &self.name).finish()
    }
}

/// Grid size used by [`np_single_crossing`] by default.
pub const CROSSING_RESOLUTION: usize = 4096;
const BISECTION_TOL: f64 = 1e-13;
const INDETERMINATE_GAP: f64 = 1e-10;

fn bisect(d: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let sa = d(a) > 0.0;
    while b - a > BISECTION_TOL {
        let mid = 0.5 * (a + b);
        let dm = d(mid);
        if dm == 0.0 {
            return mid;
        }
        if (dm > 0.0) == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Finds the sign change of `w − v` on `(0, π]`.
///
/// Returns `None` if there is none, the polished location if there is
/// exactly one, and an error if there are more.
pub fn np_single_crossing(w: &BoundFn, v: &BoundFn, resolution: usize) -> Result<Option<f64>> {
    if resolution < 2 {
        return Err(Error::Precondition("resolution must be at least 2".into()));
    }
    let d = |t: f64| w.eval(t) - v.eval(t);
    let mut crossings = Vec::new();
    let mut last: Option<(f64, bool)> = None;
    for i in 1..=resolution {
        let t = PI * i as f64 / resolution as f64;
        let dt = d(t);
        if dt == 0.0 {
            continue;
        }
        let pos = dt > 0.0;
        if let Some((t_prev, p_prev)) = last {
            if p_prev != pos {
                crossings.push(bisect(&d, t_prev, t));
            }
        }
        last = Some((t, pos));
    }
    match crossings.len() {
        0 => Ok(None),
        1 => Ok(Some(crossings[0])),
        count => {
            if let Some(pair) = crossings
                .windows(2)
                .find(|p| p[1] - p[0] < INDETERMINATE_GAP)
            {
                return Err(Error::IndeterminateCrossing(pair[0], pair[1]));
            }
            Err(Error::MultipleCrossings {
                count,
                points: crossings,
            })
        }
    }
}

/// The level at which the distribution functions of `w` and `v` on
/// `[0, π]` cross, for decreasing `w, v` with `w > v` near 0.
///
/// With one crossing at `t*` this is `w(t*)`. Without a crossing every
/// level below `min v = v(π)` works; `None` when that minimum is zero.
pub fn np_crossing_level(w: &BoundFn, v: &BoundFn, resolution: usize) -> Result<Option<f64>> {
    match np_single_crossing(w, v, resolution)? {
        Some(t) => Ok(Some(w.eval(t))),
        None => {
            let floor = v.eval(PI).min(w.eval(PI));
            Ok((floor > 0.0).then_some(floor))
        }
    }
}

/// `φ(s) = ∫_0^π (w^s − v^s) dt / (s t0^s)`.
pub fn np_phi(w: &BoundFn, v: &BoundFn, t0: f64, s: f64) -> Result<f64> {
    check_range("s", s, s > 0.0 && s.is_finite(), "s > 0")?;
    check_range("t0", t0, t0 > 0.0 && t0.is_finite(), "t0 > 0")?;
    let norm = s * t0.powf(s);
    let q = integrate(
        |t| w.eval(t).powf(s) - v.eval(t).powf(s),
        0.0,
        PI,
        (1e-13 * norm).max(1e-300),
    )?;
    Ok(q.value / norm)
}

/// Verifies that `φ` is non-decreasing along the sorted `s_grid`, within
/// `1e-9 · max|φ|`.
pub fn np_phi_monotone(w: &BoundFn, v: &BoundFn, t0: f64, s_grid: &[f64]) -> Result<IneqReport> {
    if s_grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Precondition("s grid must be strictly increasing".into()));
    }
    let phis: Vec<f64> = s_grid
        .iter()
        .map(|&s| np_phi(w, v, t0, s))
        .collect::<Result<_>>()?;
    let scale = phis.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tolerance = 1e-9 * scale.max(f64::MIN_POSITIVE);
    let mut worst = f64::INFINITY;
    for (i, p) in phis.windows(2).enumerate() {
        let step = p[1] - p[0];
        if step < -tolerance {
            return Err(Error::NotMonotone {
                s: s_grid[i + 1],
                drop: -step,
                tolerance,
            });
        }
        worst = worst.min(step);
    }
    if !worst.is_finite() {
        worst = 0.0;
    }
    Ok(IneqReport::ge("np_phi_monotone", worst, 0.0, tolerance)
        .with_param("w", &w.name)
        .with_param("v", &v.name)
        .with_param("t0", t0)
        .with_param("s", s_grid)
        .with_param("phi", &phis))
}

/// Checks `|E e^{itX}| ≤ exp(−Δ∞(X) t²/24)` for a Bernoulli `X` on
/// `t_grid`; the report carries the point of smallest slack.
pub fn bernoulli_exp_charfn_bound(f: &Pmf, t_grid: &[f64]) -> Result<IneqReport> {
    if f.len() > 2 {
        return Err(Error::Precondition(
            "expected a law on two consecutive integers".into(),
        ));
    }
    if t_grid.is_empty() {
        return Err(Error::Precondition("empty t grid".into()));
    }
    let d = delta(f, RenyiOrder::Infinity);
    let mut worst = (f64::INFINITY, 0.0, 1.0, 1.0);
    for &t in t_grid {
        check_range("t", t, (-PI..=PI).contains(&t), "-pi <= t <= pi")?;
        let lhs = char_modulus(f, t);
        let rhs = (-d * t * t * EXP_CHARFN_CONSTANT).exp();
        if rhs - lhs < worst.0 {
            worst = (rhs - lhs, t, lhs, rhs);
        }
    }
    Ok(IneqReport::le("bernoulli_exp_charfn", worst.2, worst.3, 1e-14)
        .with_param("p", f.mass(f.offset() + 1))
        .with_param("delta_inf", d)
        .with_param("t", worst.1)
        .with_param("points", t_grid.len()))
}

/// The two lower bounds on `H_α` of a Poisson-binomial with variance `σ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyVarianceBound {
    /// `−log gauss_ratio(√(6σ²α'))`.
    pub integral_form: f64,
    /// `½ max{log(1 + 2α'σ²), log(12α'σ²/π)}`.
    pub max_form: f64,
}

pub fn entropy_variance_lower_bound(sigma2: f64, alpha: RenyiOrder) -> Result<EntropyVarianceBound> {
    check_range("sigma2", sigma2, sigma2 >= 0.0 && sigma2.is_finite(), "sigma2 >= 0")?;
    if !alpha.at_least_two() {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha.value(),
            expected: "alpha in [2, inf]",
        });
    }
    let a = alpha.conjugate().expect("alpha >= 2 has a conjugate");
    let integral_form = -gauss_ratio((6.0 * sigma2 * a).sqrt()).ln();
    let first = (2.0 * a * sigma2).ln_1p();
    let second = (12.0 * a * sigma2 / PI).ln();
    Ok(EntropyVarianceBound {
        integral_form,
        max_form: 0.5 * first.max(second),
    })
}

/// `max(αa, βb) ≥ αβ/(α+β) · (a + b)` for non-negative inputs.
pub fn max_combination(alpha: f64, a: f64, beta: f64, b: f64) -> (f64, f64) {
    ((alpha * a).max(beta * b), alpha * beta / (alpha + beta) * (a + b))
}
