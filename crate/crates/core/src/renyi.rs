//! Rényi entropies `H_α` and entropy powers `Δ_α` of pmfs on ℤ, in nats.
//!
//! For finite `α ∉ {0, 1}` everything goes through `log Σ p^α`, evaluated
//! as `α log M + log1p(Σ_{p≠M} (p/M)^α)` with `M` the largest mass, so it
//! neither overflows for large `α` nor underflows for small masses.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::sum::ksum;

/// The order `α ∈ [0, ∞]`, with the three limiting cases kept distinct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    Zero,
    One,
    Infinity,
    /// `α ∈ (0,1) ∪ (1,∞)`.
    Finite(f64),
}

impl RenyiOrder {
    /// A finite order. `α = 1` and `α = 0` must use their own variants;
    /// values near 1 are not snapped.
    pub fn finite(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() && alpha != 1.0 {
            Ok(RenyiOrder::Finite(alpha))
        } else {
            Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                expected: "finite alpha in (0,1) or (1,inf)",
            })
        }
    }

    /// Maps 0, 1 and ∞ to their variants and anything else positive to
    /// [`RenyiOrder::Finite`].
    pub fn from_value(alpha: f64) -> Result<Self> {
        if alpha == 0.0 {
            Ok(RenyiOrder::Zero)
        } else if alpha == 1.0 {
            Ok(RenyiOrder::One)
        } else if alpha == f64::INFINITY {
            Ok(RenyiOrder::Infinity)
        } else {
            Self::finite(alpha)
        }
    }

    /// Numeric value of `α` (∞ for [`RenyiOrder::Infinity`]).
    pub fn value(self) -> f64 {
        match self {
            RenyiOrder::Zero => 0.0,
            RenyiOrder::One => 1.0,
            RenyiOrder::Infinity => f64::INFINITY,
            RenyiOrder::Finite(a) => a,
        }
    }

    /// Hölder conjugate `α' = α/(α-1)`; defined for finite orders and ∞.
    pub fn conjugate(self) -> Option<f64> {
        match self {
            RenyiOrder::Finite(a) => Some(a / (a - 1.0)),
            RenyiOrder::Infinity => Some(1.0),
            RenyiOrder::Zero | RenyiOrder::One => None,
        }
    }

    /// True for `α ∈ [2, ∞]`, the range of the variance comparisons.
    pub fn at_least_two(self) -> bool {
        match self {
            RenyiOrder::Infinity => true,
            RenyiOrder::Finite(a) => a >= 2.0,
            _ => false,
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(RenyiOrder::Infinity),
            t => {
                let a: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad Rényi order {s:?}")))?;
                if !a.is_finite() {
                    return Err(Error::Parse(format!("bad Rényi order {s:?}")));
                }
                Self::from_value(a)
            }
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenyiOrder::Zero => write!(f, "0"),
            RenyiOrder::One => write!(f, "1"),
            RenyiOrder::Infinity => write!(f, "inf"),
            RenyiOrder::Finite(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for RenyiOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `log Σ p^α` for finite `α > 0`.
pub fn log_power_sum(f: &Pmf, alpha: f64) -> f64 {
    let probs = f.probs();
    let (imax, &m) = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("pmf is nonempty");
    let rest = ksum(
        probs
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i != imax && p > 0.0)
            .map(|(_, &p)| (p / m).powf(alpha)),
    );
    alpha * m.ln() + rest.ln_1p()
}

/// Shannon entropy with `0 log 0 = 0`.
pub fn shannon_entropy(f: &Pmf) -> f64 {
    ksum(
        f.probs()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln()),
    )
}

/// `H_α(f)` in nats.
pub fn renyi_entropy(f: &Pmf, alpha: RenyiOrder) -> f64 {
    match alpha {
        RenyiOrder::Zero => (f.support_size() as f64).ln(),
        RenyiOrder::One => shannon_entropy(f),
        RenyiOrder::Infinity => -f.max_mass().ln(),
        RenyiOrder::Finite(a) => log_power_sum(f, a) / (1.0 - a),
    }
}

/// `Δ_α(f) = ‖f‖_α^{-2α'} − 1`, evaluated directly from the power sum so it
/// does not depend on the logarithm base.
pub fn delta(f: &Pmf, alpha: RenyiOrder) -> f64 {
    match alpha {
        RenyiOrder::Zero => {
            let s = f.support_size() as f64;
            s * s - 1.0
        }
        RenyiOrder::One => (2.0 * shannon_entropy(f)).exp_m1(),
        RenyiOrder::Infinity => {
            let m = f.max_mass();
            (1.0 - m) * (1.0 + m) / (m * m)
        }
        RenyiOrder::Finite(a) => (2.0 / (1.0 - a) * log_power_sum(f, a)).exp_m1(),
    }
}

/// True iff `H_α` is non-increasing along `grid` (within 1e-12). The grid
/// must be sorted by `α`.
pub fn renyi_monotone_check(f: &Pmf, grid: &[RenyiOrder]) -> Result<bool> {
    if grid.windows(2).any(|w| w[0].value() > w[1].value()) {
        return Err(Error::Precondition("order grid must be sorted ascending".into()));
    }
    let hs: Vec<f64> = grid.iter().map(|&a| renyi_entropy(f, a)).collect();
    Ok(hs.windows(2).all(|w| w[1] <= w[0] + 1e-12))
}
