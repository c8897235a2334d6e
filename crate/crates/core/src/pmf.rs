//! Finitely supported probability mass functions on the integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::ksum;

/// Masses at the ends of the support below this are dropped.
pub const TRIM_THRESHOLD: f64 = 1e-15;

/// Allowed deviation of the total mass from one.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A probability mass function on ℤ, stored as a dense vector of masses
/// starting at `offset`. The mass at integer `k` is `probs[k - offset]`.
///
/// Invariants: every mass is finite and non-negative, the masses sum to one
/// within [`NORMALIZATION_TOL`], and the first and last masses are positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pmf {
    offset: i64,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPmf {
    offset: i64,
    probs: Vec<f64>,
}

impl<'de> Deserialize<'de> for Pmf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPmf::deserialize(d)?;
        Pmf::new(raw.offset, raw.probs).map_err(serde::de::Error::custom)
    }
}

/// Center of symmetry of a pmf on ℤ, which lies in ½ℤ. Stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger(self.0 + rhs.0)
    }
}

impl std::fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Pmf {
    /// Validates and trims a mass vector. The total must already be one
    /// within [`NORMALIZATION_TOL`]; end masses below [`TRIM_THRESHOLD`] are
    /// dropped and the remainder renormalized.
    pub fn new(offset: i64, probs: Vec<f64>) -> Result<Self> {
        validate_entries(&probs)?;
        let total = ksum(probs.iter().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidPmf(format!(
                "masses sum to {total}, expected 1"
            )));
        }
        Self::trimmed(offset, probs)
    }

    /// Builds a pmf from non-negative weights, normalizing them.
    pub fn from_weights(offset: i64, weights: Vec<f64>) -> Result<Self> {
        validate_entries(&weights)?;
        let total = ksum(weights.iter().copied());
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidPmf(format!("weights sum to {total}")));
        }
        let probs = weights.into_iter().map(|w| w / total).collect();
        Self::trimmed(offset, probs)
    }

    /// Point mass at `k`.
    pub fn dirac(k: i64) -> Self {
        Pmf {
            offset: k,
            probs: vec![1.0],
        }
    }

    /// Internal constructor for vectors produced by exact operations: trims
    /// the ends and renormalizes only if something was dropped.
    pub(crate) fn trimmed(offset: i64, mut probs: Vec<f64>) -> Result<Self> {
        let first = probs.iter().position(|&p| p >= TRIM_THRESHOLD);
        let last = probs.iter().rposition(|&p| p >= TRIM_THRESHOLD);
        let (first, last) = match (first, last) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::InvalidPmf("no mass above the trim threshold".into())),
        };
        let dropped = first > 0 || last + 1 < probs.len();
        probs.truncate(last + 1);
        probs.drain(..first);
        if dropped {
            let total = ksum(probs.iter().copied());
            for p in &mut probs {
                *p /= total;
            }
        }
        Ok(Pmf {
            offset: offset + first as i64,
            probs,
        })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Largest integer in the (trimmed) support window.
    pub fn max_support(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    /// Mass at integer `k`.
    pub fn mass(&self, k: i64) -> f64 {
        let i = k - self.offset;
        if i < 0 || i >= self.probs.len() as i64 {
            0.0
        } else {
            self.probs[i as usize]
        }
    }

    /// `(k, mass)` pairs over the support window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    /// Largest mass, ‖f‖∞.
    pub fn max_mass(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Number of masses above [`TRIM_THRESHOLD`].
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > TRIM_THRESHOLD).count()
    }

    pub fn total_mass(&self) -> f64 {
        ksum(self.probs.iter().copied())
    }

    /// The same pmf translated by `k`.
    pub fn shift(&self, k: i64) -> Pmf {
        Pmf {
            offset: self.offset + k,
            probs: self.probs.clone(),
        }
    }

    /// Mean and variance by direct compensated summation.
    pub fn mean_var(&self) -> (f64, f64) {
        // Work relative to the offset to keep magnitudes small.
        let rel_mean = ksum(self.probs.iter().enumerate().map(|(i, &p)| i as f64 * p));
        let var = ksum(self.probs.iter().enumerate().map(|(i, &p)| {
            let d = i as f64 - rel_mean;
            d * d * p
        }));
        (self.offset as f64 + rel_mean, var)
    }

    pub fn variance(&self) -> f64 {
        self.mean_var().1
    }

    /// Log-concavity: `f(n)² ≥ f(n-1) f(n+1) - 1e-14` at every interior point
    /// and no zeros inside the support.
    pub fn is_log_concave(&self) -> bool {
        if self.probs.iter().any(|&p| p <= 0.0) {
            return false;
        }
        self.probs
            .windows(3)
            .all(|w| w[1] * w[1] >= w[0] * w[2] - 1e-14)
    }

    /// Returns the center of mirror symmetry when `f(a + x) = f(a - x)` holds
    /// within 1e-12 per entry.
    pub fn is_symmetric(&self) -> Option<HalfInteger> {
        let n = self.probs.len();
        let mirrored = (0..n / 2).all(|i| (self.probs[i] - self.probs[n - 1 - i]).abs() <= 1e-12);
        mirrored.then(|| HalfInteger(2 * self.offset + n as i64 - 1))
    }
}

/// Free-function form of [`Pmf::mean_var`].
pub fn mean_var(f: &Pmf) -> (f64, f64) {
    f.mean_var()
}

/// Free-function form of [`Pmf::is_log_concave`].
pub fn is_log_concave(f: &Pmf) -> bool {
    f.is_log_concave()
}

/// Free-function form of [`Pmf::is_symmetric`].
pub fn is_symmetric(f: &Pmf) -> Option<HalfInteger> {
    f.is_symmetric()
}

fn validate_entries(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::InvalidPmf("empty mass vector".into()));
    }
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidPmf(format!("entry {i} is {p}")));
        }
    }
    Ok(())
}
