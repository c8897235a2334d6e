//! Littlewood–Offord: point probabilities `Q(S, 0) = max_x P(Σ v_i B_i = x)`.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::bounds::gauss_ratio;
use crate::error::{check_range, Error, Result};
use crate::exact::{erdos_value, poisson_binomial_exact, rational_from_f64, weighted_bernoulli_sum_exact};
use crate::families::weighted_bernoulli_sum;
use crate::pmf::Pmf;
use crate::renyi::RenyiOrder;
use crate::report::{Cell, IneqReport, Table};
use crate::weights::WeightVector;

use super::{entropy_variance_reports, pb_variance, EXACT_MAX_FACTORS, PROBABILITY_TOL};

/// Largest `n` in [`lo_erdos_comparison`].
pub const ERDOS_MAX_N: usize = 60;

/// The sign vector `a_i = sign(v_i)`.
pub fn lo_reduce(v: &WeightVector) -> Vec<i8> {
    v.signs()
}

fn check_ps(v: &WeightVector, ps: &[f64]) -> Result<()> {
    if v.len() != ps.len() {
        return Err(Error::LengthMismatch(v.len(), ps.len()));
    }
    for &p in ps {
        check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    }
    Ok(())
}

/// Law of the integer-scaled `Σ v_i B_i`, computed exactly for
/// `n ≤ 12` and rounded once.
pub fn lo_law(v: &WeightVector, ps: &[f64]) -> Result<Pmf> {
    check_ps(v, ps)?;
    if ps.len() <= EXACT_MAX_FACTORS {
        weighted_sum_exact(v, ps)?.to_pmf()
    } else {
        weighted_bernoulli_sum(v, ps)
    }
}

fn weighted_sum_exact(v: &WeightVector, ps: &[f64]) -> Result<crate::exact::RationalPmf> {
    let exact: Vec<_> = ps.iter().map(|&p| rational_from_f64(p)).collect::<Result<_>>()?;
    weighted_bernoulli_sum_exact(v, &exact)
}

/// Exact `Q(Σ v_i B_i, 0)`.
pub fn q_exact(v: &WeightVector, ps: &[f64]) -> Result<BigRational> {
    check_ps(v, ps)?;
    Ok(weighted_sum_exact(v, ps)?.max_mass())
}

/// `Q ≤ gauss_ratio(√(6σ²))` and `Q ≤ 1/√(1 + 2σ²)`, `σ² = Σ p_i(1 − p_i)`.
pub fn lo_q_bound(v: &WeightVector, ps: &[f64]) -> Result<Vec<IneqReport>> {
    let q = lo_law(v, ps)?.max_mass();
    let sigma2 = pb_variance(ps);
    let gauss = gauss_ratio((6.0 * sigma2).sqrt());
    let poisson = 1.0 / (1.0 + 2.0 * sigma2).sqrt();
    Ok([("lo_q_gauss", gauss), ("lo_q_poisson", poisson)]
        .into_iter()
        .map(|(name, rhs)| {
            IneqReport::le(name, q, rhs, PROBABILITY_TOL)
                .with_param("weights", v)
                .with_param("ps", ps)
                .with_param("sigma2", sigma2)
        })
        .collect())
}

/// `H_α(Σ v_i B_i)` against both variance bounds.
pub fn lo_renyi_bound(v: &WeightVector, ps: &[f64], alpha: RenyiOrder) -> Result<Vec<IneqReport>> {
    let f = lo_law(v, ps)?;
    let reports = entropy_variance_reports(&f, pb_variance(ps), alpha)?;
    Ok(reports
        .into_iter()
        .map(|r| r.with_param("weights", v).with_param("ps", ps))
        .collect())
}

/// For unit weights and `p = 1/2`: exact `Q`, the binomial value
/// `2^{-n} binom(n, ⌊n/2⌋)`, the Gaussian bound and bound/Q, for `n = 1..=n_max`.
pub fn lo_erdos_comparison(n_max: usize) -> Result<Table> {
    if n_max == 0 || n_max > ERDOS_MAX_N {
        return Err(Error::Guard {
            what: "n",
            value: n_max as u128,
            limit: ERDOS_MAX_N as u128,
        });
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut t = Table::new(&["n", "q", "erdos", "exact_match", "bound", "ratio"]);
    for n in 1..=n_max {
        let q = poisson_binomial_exact(&vec![half.clone(); n])?.max_mass();
        let erdos = erdos_value(n as u64);
        let qf = q.to_f64().unwrap_or(f64::NAN);
        let bound = gauss_ratio((6.0 * n as f64 / 4.0).sqrt());
        t.push(vec![
            Cell::Int(n as i64),
            qf.into(),
            erdos.to_f64().unwrap_or(f64::NAN).into(),
            (if q == erdos { "true" } else { "false" }).into(),
            bound.into(),
            (bound / qf).into(),
        ]);
    }
    Ok(t)
}
