//! Named distribution families and Bernoulli sums.

use crate::error::{check_range, Error, Result};
use crate::pmf::Pmf;
use crate::weights::WeightVector;

/// Largest support the truncated infinite families may produce.
pub const MAX_FAMILY_SUPPORT: usize = 10_000_000;

/// Bernoulli(p) on {0, 1}. The endpoints give point masses.
pub fn bernoulli(p: f64) -> Result<Pmf> {
    check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    Pmf::trimmed(0, vec![1.0 - p, p])
}

/// Uniform on the integer interval `[a, b]`.
pub fn uniform(a: i64, b: i64) -> Result<Pmf> {
    if a > b {
        return Err(Error::Precondition(format!("uniform needs a <= b, got {a} > {b}")));
    }
    let n = (b - a + 1) as usize;
    if n > MAX_FAMILY_SUPPORT {
        return Err(Error::Guard {
            what: "uniform support",
            value: n as u128,
            limit: MAX_FAMILY_SUPPORT as u128,
        });
    }
    Ok(Pmf::trimmed(a, vec![1.0 / n as f64; n]).expect("uniform masses are positive"))
}

/// Poisson(λ) restricted to `0..=N`, where `N` is the smallest cutoff whose
/// dropped upper tail is certified below `tail_eps`, then renormalized.
///
/// The tail after `N` is bounded by `f(N+1) / (1 - λ/(N+2))` once `N+2 > λ`.
pub fn poisson_truncated(lambda: f64, tail_eps: f64) -> Result<Pmf> {
    check_range("lambda", lambda, lambda > 0.0 && lambda.is_finite(), "lambda > 0")?;
    check_range("tail_eps", tail_eps, tail_eps > 0.0 && tail_eps <= 1e-6, "0 < tail_eps <= 1e-6")?;
    let log_lambda = lambda.ln();
    let log_mass = |k: usize| -lambda + k as f64 * log_lambda - libm::lgamma(k as f64 + 1.0);
    let mut probs = Vec::new();
    let mut k = 0usize;
    loop {
        probs.push(log_mass(k).exp());
        let next = (k + 2) as f64;
        if next > lambda {
            let tail = log_mass(k + 1).exp() / (1.0 - lambda / next);
            if tail < tail_eps {
                break;
            }
        }
        k += 1;
        if k >= MAX_FAMILY_SUPPORT {
            return Err(Error::Guard {
                what: "poisson support",
                value: k as u128,
                limit: MAX_FAMILY_SUPPORT as u128,
            });
        }
    }
    Pmf::from_weights(0, probs)
}

/// Two-sided geometric law `P(X = ±(1/2 + k)) = (1-p)/2 · p^k` moved onto
/// the integers by a shift of −1/2: atoms `k` and `−k−1` for `k ≥ 0`,
/// symmetric about −1/2. Truncated where the dropped second moment is
/// negligible, then renormalized.
pub fn symmetric_geometric_half(p: f64) -> Result<Pmf> {
    check_range("p", p, p > 0.0 && p < 1.0, "0 < p < 1")?;
    // Dropped variance is about (K+2)² p^(K+1) / (1-p)².
    let q2 = (1.0 - p) * (1.0 - p);
    let mut k = 0usize;
    let mut pk1 = p;
    while pk1 * ((k + 2) as f64).powi(2) / q2 >= 1e-18 {
        k += 1;
        pk1 *= p;
        if 2 * k + 2 > MAX_FAMILY_SUPPORT {
            return Err(Error::Guard {
                what: "geometric support",
                value: (2 * k + 2) as u128,
                limit: MAX_FAMILY_SUPPORT as u128,
            });
        }
    }
    let half = (1.0 - p) / 2.0;
    let mut right = Vec::with_capacity(k + 1);
    let mut pw = 1.0;
    for _ in 0..=k {
        right.push(half * pw);
        pw *= p;
    }
    let mut probs: Vec<f64> = right.iter().rev().copied().collect();
    probs.extend_from_slice(&right);
    Pmf::from_weights(-(k as i64) - 1, probs)
}

/// Law of `X_1 + ⋯ + X_n` for independent Bernoulli(p_i). Empty input
/// gives the point mass at zero.
pub fn poisson_binomial(ps: &[f64]) -> Result<Pmf> {
    for &p in ps {
        check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    }
    let mut cur = Vec::with_capacity(ps.len() + 1);
    cur.push(1.0);
    for &p in ps {
        cur.push(0.0);
        for k in (1..cur.len()).rev() {
            cur[k] = (1.0 - p) * cur[k] + p * cur[k - 1];
        }
        cur[0] *= 1.0 - p;
    }
    Pmf::trimmed(0, cur)
}

/// Law of `Σ v_i B_i` for independent Bernoulli(p_i), after multiplying the
/// weights by the lcm of their denominators so the sum lives on ℤ.
/// Point probabilities and Rényi entropies are unchanged by the scaling.
pub fn weighted_bernoulli_sum(v: &WeightVector, ps: &[f64]) -> Result<Pmf> {
    if v.len() != ps.len() {
        return Err(Error::LengthMismatch(v.len(), ps.len()));
    }
    for &p in ps {
        check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
    }
    let m = v.integer_scaled()?;
    let width: u128 = m.iter().map(|x| x.unsigned_abs() as u128).sum();
    if width + 1 > MAX_FAMILY_SUPPORT as u128 {
        return Err(Error::Guard {
            what: "weighted sum support",
            value: width + 1,
            limit: MAX_FAMILY_SUPPORT as u128,
        });
    }
    let offset: i64 = m.iter().filter(|&&x| x < 0).sum();
    // cur[j] is the mass at `low + j`, where `low` tracks the running minimum.
    let mut cur = vec![1.0];
    for (&mi, &p) in m.iter().zip(ps) {
        let step = mi.unsigned_abs() as usize;
        let old_len = cur.len();
        cur.resize(old_len + step, 0.0);
        // New atoms at {0, mi}; for mi < 0 the frame extends downward, so
        // "stay" means a shift up by |mi| in index terms.
        let (stay, jump) = if mi > 0 { (1.0 - p, p) } else { (p, 1.0 - p) };
        for j in (0..cur.len()).rev() {
            let from_stay = if j < old_len { cur[j] } else { 0.0 };
            let from_jump = if j >= step { cur[j - step] } else { 0.0 };
            cur[j] = stay * from_stay + jump * from_jump;
        }
    }
    Pmf::trimmed(offset, cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_cases() {
        assert_eq!(bernoulli(0.0).unwrap(), Pmf::dirac(0));
        assert_eq!(bernoulli(1.0).unwrap(), Pmf::dirac(1));
        assert_eq!(bernoulli(0.5).unwrap().probs(), &[0.5, 0.5]);
        let b = bernoulli(0.3).unwrap();
        assert_eq!(b.probs(), &[0.7, 0.3]);
        assert!((b.variance() - 0.21).abs() < 1e-15);
        assert!(bernoulli(1.5).is_err());
        assert!(bernoulli(-0.1).is_err());
        assert!(bernoulli(f64::NAN).is_err());
    }

    #[test]
    fn uniform_cases() {
        assert_eq!(uniform(0, 0).unwrap(), Pmf::dirac(0));
        let u = uniform(0, 2).unwrap();
        assert_eq!(u.probs(), &[1.0 / 3.0; 3]);
        let w = uniform(-1, 2).unwrap();
        assert_eq!(w.offset(), -1);
        assert_eq!(w.probs(), &[0.25; 4]);
        assert!(uniform(3, 2).is_err());
        for m in [1i64, 2, 7, 40] {
            let v = uniform(0, m - 1).unwrap().variance();
            let expect = ((m * m - 1) as f64) / 12.0;
            assert!((v - expect).abs() < 1e-12 * expect.max(1.0));
        }
    }

    #[test]
    fn poisson_small_lambda() {
        let f = poisson_truncated(1e-300, 1e-15).unwrap();
        assert_eq!(f, Pmf::dirac(0));
        let g = poisson_truncated(1e-3, 1e-15).unwrap();
        assert!((g.mass(0) - (-1e-3f64).exp()).abs() < 1e-15);
        assert!(poisson_truncated(0.0, 1e-15).is_err());
        assert!(poisson_truncated(-1.0, 1e-15).is_err());
        assert!(poisson_truncated(1.0, 1e-3).is_err());
    }

    #[test]
    fn poisson_large_lambda_is_normalized() {
        for lambda in [0.5, 7.0, 100.0, 2500.0] {
            let f = poisson_truncated(lambda, 1e-12).unwrap();
            assert!((f.total_mass() - 1.0).abs() < 1e-12);
            let (m, v) = f.mean_var();
            assert!((m - lambda).abs() < 1e-8 * lambda.max(1.0), "{lambda}: {m}");
            assert!((v - lambda).abs() < 1e-8 * lambda.max(1.0), "{lambda}: {v}");
        }
    }

    #[test]
    fn geometric_degenerates_to_fair_coin() {
        let f = symmetric_geometric_half(1e-300).unwrap();
        assert_eq!(f.offset(), -1);
        assert_eq!(f.probs(), &[0.5, 0.5]);
        assert!(symmetric_geometric_half(1.0).is_err());
        assert!(symmetric_geometric_half(0.0).is_err());
    }

    #[test]
    fn geometric_is_symmetric_about_minus_half() {
        let f = symmetric_geometric_half(0.6).unwrap();
        assert_eq!(f.is_symmetric().map(|c| c.value()), Some(-0.5));
        assert!(f.is_log_concave());
    }

    #[test]
    fn poisson_binomial_cases() {
        assert_eq!(poisson_binomial(&[]).unwrap(), Pmf::dirac(0));
        assert_eq!(poisson_binomial(&[0.3]).unwrap(), bernoulli(0.3).unwrap());
        let f = poisson_binomial(&[0.5; 4]).unwrap();
        assert_eq!(f.max_mass(), 6.0 / 16.0);
        assert_eq!(poisson_binomial(&[1.0, 1.0, 0.0]).unwrap(), Pmf::dirac(2));
    }

    #[test]
    fn weighted_sums() {
        let v = WeightVector::from_integers(&[1, -1]).unwrap();
        let f = weighted_bernoulli_sum(&v, &[0.5, 0.5]).unwrap();
        assert_eq!(f.offset(), -1);
        assert_eq!(f.probs(), &[0.25, 0.5, 0.25]);

        let v: WeightVector = "1/2,1/3".parse().unwrap();
        let f = weighted_bernoulli_sum(&v, &[0.5, 0.5]).unwrap();
        assert_eq!(f.offset(), 0);
        assert_eq!(f.probs(), &[0.25, 0.0, 0.25, 0.25, 0.0, 0.25]);

        let v = WeightVector::from_integers(&[3, -2]).unwrap();
        let f = weighted_bernoulli_sum(&v, &[0.2, 0.6]).unwrap();
        // outcomes: 0 (0.32), 3 (0.08), -2 (0.48), 1 (0.12)
        for (k, m) in [(-2, 0.48), (0, 0.32), (1, 0.12), (3, 0.08)] {
            assert!((f.mass(k) - m).abs() < 1e-15, "{k}");
        }
        assert!(weighted_bernoulli_sum(&v, &[0.5]).is_err());
    }
}
