//! Inequality checks. Each returns [`IneqReport`]s with both sides
//! evaluated; none of them assumes the inequality holds.

pub mod lo;
pub mod scan;
pub mod suite;

use num_traits::ToPrimitive;

use crate::bounds::{
    entropy_variance_lower_bound, BC_CONSTANT, BMM_CONSTANT, MIN_EPI_CONSTANT, MIN_EPI_IMPROVED,
    REVERSAL_CONSTANT, SMALL_VALUE_CONSTANT,
};
use crate::convolve::convolve_all;
use crate::error::{check_range, Error, Result};
use crate::exact::{poisson_binomial_exact, rational_from_f64};
use crate::families::{bernoulli, poisson_binomial};
use crate::pmf::Pmf;
use crate::renyi::{delta, renyi_entropy, RenyiOrder};
use crate::report::{scaled_tolerance, IneqReport};

/// Tolerance for comparisons of entropies (nats).
pub const ENTROPY_TOL: f64 = 1e-9;
/// Tolerance for comparisons of probabilities.
pub const PROBABILITY_TOL: f64 = 1e-12;
/// Up to this many Bernoulli factors, laws are computed in exact rational
/// arithmetic and rounded once.
pub const EXACT_MAX_FACTORS: usize = 12;

fn require_at_least_two(alpha: RenyiOrder) -> Result<f64> {
    if !alpha.at_least_two() {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha.value(),
            expected: "alpha in [2, inf]",
        });
    }
    Ok(alpha.conjugate().expect("alpha >= 2"))
}

/// Law of `Σ B_i`, exactly for short vectors.
pub fn pb_law(ps: &[f64]) -> Result<Pmf> {
    if ps.len() <= EXACT_MAX_FACTORS {
        let exact: Vec<_> = ps.iter().map(|&p| rational_from_f64(p)).collect::<Result<_>>()?;
        poisson_binomial_exact(&exact)?.to_pmf()
    } else {
        poisson_binomial(ps)
    }
}

/// `Σ p_i (1 − p_i)`.
pub fn pb_variance(ps: &[f64]) -> f64 {
    crate::sum::ksum(ps.iter().map(|&p| p * (1.0 - p)))
}

/// `(12t(1−t)+1)(t²+(1−t)²)² − 1` expanded and in factored form
/// `−4(t−1)t(2t−1)²(3t²−3t+2)`.
pub fn bernoulli_witness_polynomial(t: f64) -> (f64, f64) {
    let s = t * t + (1.0 - t) * (1.0 - t);
    let expanded = (12.0 * t * (1.0 - t) + 1.0) * s * s - 1.0;
    let u = 2.0 * t - 1.0;
    let factored = -4.0 * (t - 1.0) * t * u * u * (3.0 * t * t - 3.0 * t + 2.0);
    (expanded, factored)
}

/// `Δ_α(Bernoulli(p)) ≤ 12 p(1−p)` for `α ≥ 2`; equality at `p = 1/2`.
pub fn check_delta_le_12var_bernoulli(p: f64, alpha: RenyiOrder) -> Result<IneqReport> {
    require_at_least_two(alpha)?;
    check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    let lhs = delta(&bernoulli(p)?, alpha);
    let rhs = BC_CONSTANT * p * (1.0 - p);
    Ok(IneqReport::le("delta_le_12var_bernoulli", lhs, rhs, scaled_tolerance(rhs))
        .with_param("p", p)
        .with_param("alpha", alpha)
        .with_param("equality_case", p == 0.5))
}

/// `Δ_α(X_1 + ⋯ + X_n) ≥ (α'/6) Σ Δ_α(X_i)` for Poisson-binomial `X_i`.
pub fn check_bernoulli_repi(ps_list: &[Vec<f64>], alpha: RenyiOrder) -> Result<IneqReport> {
    let a = require_at_least_two(alpha)?;
    let mut parts = 0.0;
    for ps in ps_list {
        parts += delta(&pb_law(ps)?, alpha);
    }
    let all: Vec<f64> = ps_list.iter().flatten().copied().collect();
    let lhs = delta(&pb_law(&all)?, alpha);
    let rhs = a / 6.0 * parts;
    Ok(IneqReport::ge("bernoulli_repi", lhs, rhs, scaled_tolerance(lhs.max(rhs)))
        .with_param("ps", ps_list)
        .with_param("alpha", alpha)
        .with_param("constant", a / 6.0))
}

fn delta_inf_sides(fs: &[Pmf]) -> Result<(f64, f64)> {
    if fs.is_empty() {
        return Err(Error::Precondition("need at least one summand".into()));
    }
    let sum = convolve_all(fs.iter());
    let parts = crate::sum::ksum(fs.iter().map(|f| delta(f, RenyiOrder::Infinity)));
    Ok((delta(&sum, RenyiOrder::Infinity), parts))
}

/// `Δ∞(ΣX_i) ≥ c ΣΔ∞(X_i)` for `c = 1/22` and `c = 1/(16 + 36/π²)`.
pub fn check_min_epi(fs: &[Pmf]) -> Result<Vec<IneqReport>> {
    let (lhs, parts) = delta_inf_sides(fs)?;
    let ratio = if parts > 0.0 { lhs / parts } else { f64::NAN };
    Ok([("min_epi", MIN_EPI_CONSTANT), ("min_epi_improved", MIN_EPI_IMPROVED)]
        .into_iter()
        .map(|(name, c)| {
            let rhs = c * parts;
            IneqReport::ge(name, lhs, rhs, scaled_tolerance(lhs.max(rhs)))
                .with_param("constant", c)
                .with_param("ratio", ratio)
                .with_param("n", fs.len())
        })
        .collect())
}

/// `Δ∞(ΣX_i) ≤ 6 ΣΔ∞(X_i)` for Poisson-binomial `X_i`.
pub fn check_min_epi_reversal(ps_list: &[Vec<f64>]) -> Result<IneqReport> {
    let mut parts = 0.0;
    for ps in ps_list {
        parts += delta(&pb_law(ps)?, RenyiOrder::Infinity);
    }
    let all: Vec<f64> = ps_list.iter().flatten().copied().collect();
    let lhs = delta(&pb_law(&all)?, RenyiOrder::Infinity);
    let rhs = REVERSAL_CONSTANT * parts;
    Ok(IneqReport::le("min_epi_reversal", lhs, rhs, scaled_tolerance(rhs))
        .with_param("ps", ps_list))
}

/// `Δ∞(ΣX_i) ≥ (π²/36) ΣΔ∞(X_i)` when every `‖f_i‖∞ ≥ 1/2`.
pub fn check_small_value_min_epi(fs: &[Pmf]) -> Result<IneqReport> {
    if let Some((i, f)) = fs
        .iter()
        .enumerate()
        .find(|(_, f)| f.max_mass() < 0.5 - PROBABILITY_TOL)
    {
        return Err(Error::Precondition(format!(
            "factor {i} has max mass {} < 1/2",
            f.max_mass()
        )));
    }
    let (lhs, parts) = delta_inf_sides(fs)?;
    let rhs = SMALL_VALUE_CONSTANT * parts;
    Ok(
        IneqReport::ge("small_value_min_epi", lhs, rhs, scaled_tolerance(lhs.max(rhs)))
            .with_param("n", fs.len())
            .with_param("max_masses", fs.iter().map(Pmf::max_mass).collect::<Vec<_>>()),
    )
}

/// `Δ∞(X) ≤ 12 Var(X)`.
pub fn check_bc_upper(f: &Pmf) -> IneqReport {
    let lhs = delta(f, RenyiOrder::Infinity);
    let rhs = BC_CONSTANT * f.variance();
    IneqReport::le("bc_upper", lhs, rhs, scaled_tolerance(rhs))
        .with_param("support", f.len())
        .with_param("offset", f.offset())
}

/// `Δ∞(X) ≥ 2 Var(X)` for symmetric log-concave `X`.
pub fn check_bmm_lower(f: &Pmf) -> Result<IneqReport> {
    let Some(center) = f.is_symmetric() else {
        return Err(Error::Precondition("pmf is not symmetric".into()));
    };
    if !f.is_log_concave() {
        return Err(Error::Precondition("pmf is not log-concave".into()));
    }
    let lhs = delta(f, RenyiOrder::Infinity);
    let rhs = BMM_CONSTANT * f.variance();
    Ok(IneqReport::ge("bmm_lower", lhs, rhs, scaled_tolerance(lhs))
        .with_param("center", center.to_string())
        .with_param("support", f.len()))
}

/// `H_α(f) ≥` both variance bounds, with `σ²` supplied by the caller.
pub fn entropy_variance_reports(f: &Pmf, sigma2: f64, alpha: RenyiOrder) -> Result<Vec<IneqReport>> {
    let bound = entropy_variance_lower_bound(sigma2, alpha)?;
    let h = renyi_entropy(f, alpha);
    Ok(vec![
        IneqReport::ge("entropy_variance_integral", h, bound.integral_form, ENTROPY_TOL)
            .with_param("sigma2", sigma2)
            .with_param("alpha", alpha),
        IneqReport::ge("entropy_variance_max", h, bound.max_form, ENTROPY_TOL)
            .with_param("sigma2", sigma2)
            .with_param("alpha", alpha),
    ])
}

/// `H_α(Y)` against both variance bounds for the Poisson-binomial `Y`.
pub fn check_entropy_variance_bound(ps: &[f64], alpha: RenyiOrder) -> Result<Vec<IneqReport>> {
    require_at_least_two(alpha)?;
    let f = pb_law(ps)?;
    let reports = entropy_variance_reports(&f, pb_variance(ps), alpha)?;
    Ok(reports.into_iter().map(|r| r.with_param("ps", ps)).collect())
}

/// Exact maximum mass of a Poisson-binomial, as a double.
pub fn pb_max_mass_exact(ps: &[f64]) -> Result<f64> {
    let exact: Vec<_> = ps.iter().map(|&p| rational_from_f64(p)).collect::<Result<_>>()?;
    Ok(poisson_binomial_exact(&exact)?
        .max_mass()
        .to_f64()
        .unwrap_or(f64::NAN))
}
