//! Parameter scans that produce CSV-ready tables.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{check_range, Error, Result};
use crate::families::{bernoulli, poisson_truncated};
use crate::pmf::Pmf;
use crate::renyi::{delta, RenyiOrder};
use crate::report::{Cell, Table};

use super::{pb_law, pb_variance};

/// Largest `n` in [`shannon_counterexample_scan`].
pub const SHANNON_MAX_N: usize = 60;
/// Tail mass dropped when truncating Poisson laws in scans.
pub const POISSON_SCAN_TAIL: f64 = 1e-18;

/// `Δ_1(ΣX_i) / ΣΔ_1(X_i)` for `n` iid Bernoulli(θ).
pub fn shannon_ratio(theta: f64, n: usize) -> Result<f64> {
    check_range("theta", theta, theta > 0.0 && theta <= 0.5, "0 < theta <= 1/2")?;
    let single = delta(&bernoulli(theta)?, RenyiOrder::One);
    let sum = pb_law(&vec![theta; n])?;
    Ok(delta(&sum, RenyiOrder::One) / (n as f64 * single))
}

/// One row per `(θ, n)` with `n = 1..=n_max`: header `theta,n,lhs,rhs,ratio`.
pub fn shannon_counterexample_scan(theta_grid: &[f64], n_max: usize) -> Result<Table> {
    if n_max == 0 || n_max > SHANNON_MAX_N {
        return Err(Error::Guard {
            what: "n",
            value: n_max as u128,
            limit: SHANNON_MAX_N as u128,
        });
    }
    let mut t = Table::new(&["theta", "n", "lhs", "rhs", "ratio"]);
    for &theta in theta_grid {
        check_range("theta", theta, theta > 0.0 && theta <= 0.5, "0 < theta <= 1/2")?;
        let single = delta(&bernoulli(theta)?, RenyiOrder::One);
        let rows: Vec<Vec<Cell>> = (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let sum = pb_law(&vec![theta; n])?;
                let lhs = delta(&sum, RenyiOrder::One);
                let rhs = n as f64 * single;
                Ok(vec![
                    theta.into(),
                    Cell::Int(n as i64),
                    lhs.into(),
                    rhs.into(),
                    (lhs / rhs).into(),
                ])
            })
            .collect::<Result<_>>()?;
        t.rows.extend(rows);
    }
    Ok(t)
}

/// Families for [`tightness_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Bernoulli(p), parameter `p`.
    BernoulliP,
    /// Poisson(λ), parameter `λ`.
    PoissonLambda,
    /// Binomial(n, 1/2), parameter `n`.
    IidBinomial,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::BernoulliP => "bernoulli_p",
            Family::PoissonLambda => "poisson_lambda",
            Family::IidBinomial => "iid_binomial",
        }
    }

    /// The law and its variance at `param`.
    pub fn law(self, param: f64) -> Result<(Pmf, f64)> {
        match self {
            Family::BernoulliP => {
                check_range("p", param, (0.0..=1.0).contains(&param), "0 <= p <= 1")?;
                Ok((bernoulli(param)?, param * (1.0 - param)))
            }
            Family::PoissonLambda => Ok((poisson_truncated(param, POISSON_SCAN_TAIL)?, param)),
            Family::IidBinomial => {
                check_range("n", param, param >= 0.0 && param.fract() == 0.0 && param <= 1e6, "integer n >= 0")?;
                let ps = vec![0.5; param as usize];
                Ok((pb_law(&ps)?, pb_variance(&ps)))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli_p" => Ok(Family::BernoulliP),
            "poisson_lambda" => Ok(Family::PoissonLambda),
            "iid_binomial" => Ok(Family::IidBinomial),
            other => Err(Error::Parse(format!(
                "unknown family {other:?} (expected bernoulli_p, poisson_lambda or iid_binomial)"
            ))),
        }
    }
}

/// Slack of `2α'Var ≤ Δ_α` along `grid`; header
/// `family,param,alpha,lhs,rhs,slack`.
pub fn tightness_scan(family: Family, grid: &[f64], alpha: RenyiOrder) -> Result<Table> {
    let a = super::require_at_least_two(alpha)?;
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&param| {
            let (f, var) = family.law(param)?;
            let lhs = 2.0 * a * var;
            let rhs = delta(&f, alpha);
            Ok(vec![
                family.name().into(),
                param.into(),
                alpha.to_string().into(),
                lhs.into(),
                rhs.into(),
                (rhs - lhs).into(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&["family", "param", "alpha", "lhs", "rhs", "slack"]);
    t.rows = rows;
    Ok(t)
}
