//! Exact rational arithmetic path for small Bernoulli sums.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::weights::WeightVector;

/// Largest integer-lattice width handled by the exact path.
pub const MAX_EXACT_WIDTH: usize = 1_000_000;

/// A pmf on ℤ with exact rational masses. No trimming is applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPmf {
    offset: i64,
    probs: Vec<BigRational>,
}

impl RationalPmf {
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn mass(&self, k: i64) -> BigRational {
        let i = k - self.offset;
        if i < 0 || i >= self.probs.len() as i64 {
            BigRational::zero()
        } else {
            self.probs[i as usize].clone()
        }
    }

    /// `Q(S, 0) = max_x P(S = x)`.
    pub fn max_mass(&self) -> BigRational {
        self.probs
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_mass(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Converts to a floating-point pmf (rounding each mass once).
    pub fn to_pmf(&self) -> Result<Pmf> {
        let probs = self
            .probs
            .iter()
            .map(|p| p.to_f64().unwrap_or(0.0))
            .collect();
        Pmf::from_weights(self.offset, probs)
    }
}

/// Exact rational value of a double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("{x} has no rational value")))
}

fn check_probability(p: &BigRational) -> Result<()> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return Err(Error::Precondition(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Exact law of `Σ B_i` for independent Bernoulli(p_i).
pub fn poisson_binomial_exact(ps: &[BigRational]) -> Result<RationalPmf> {
    let mut cur = vec![BigRational::one()];
    for p in ps {
        check_probability(p)?;
        let q = BigRational::one() - p;
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k] += &q * c;
            next[k + 1] += p * c;
        }
        cur = next;
    }
    Ok(RationalPmf {
        offset: 0,
        probs: cur,
    })
}

/// Exact law of the integer-scaled `Σ v_i B_i` (weights multiplied by the
/// lcm of their denominators).
pub fn weighted_bernoulli_sum_exact(v: &WeightVector, ps: &[BigRational]) -> Result<RationalPmf> {
    if v.len() != ps.len() {
        return Err(Error::LengthMismatch(v.len(), ps.len()));
    }
    let m = v.integer_scaled()?;
    let width: u128 = m.iter().map(|x| x.unsigned_abs() as u128).sum();
    if width + 1 > MAX_EXACT_WIDTH as u128 {
        return Err(Error::Guard {
            what: "exact weighted sum support",
            value: width + 1,
            limit: MAX_EXACT_WIDTH as u128,
        });
    }
    let offset: i64 = m.iter().filter(|&&x| x < 0).sum();
    let mut cur = vec![BigRational::one()];
    let mut low = 0i64;
    for (&mi, p) in m.iter().zip(ps) {
        check_probability(p)?;
        let q = BigRational::one() - p;
        let new_low = low.min(low + mi);
        let mut next = vec![BigRational::zero(); cur.len() + mi.unsigned_abs() as usize];
        for (j, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = low + j as i64;
            next[(x - new_low) as usize] += &q * c;
            next[(x + mi - new_low) as usize] += p * c;
        }
        cur = next;
        low = new_low;
    }
    debug_assert_eq!(low, offset);
    Ok(RationalPmf { offset, probs: cur })
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Erdős's sharp Littlewood–Offord value `2^{-n} binom(n, ⌊n/2⌋)`.
pub fn erdos_value(n: u64) -> BigRational {
    let num = BigInt::from(binomial(n, n / 2));
    let den = BigInt::one() << n as usize;
    BigRational::new(num, den)
}
