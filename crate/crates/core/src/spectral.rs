//! Characteristic functions `t ↦ E e^{itX}` of pmfs on ℤ and their
//! `L^q([-π, π])` norms (normalized by `1/2π`).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_range, Result};
use crate::pmf::Pmf;
use crate::quadrature::integrate;
use crate::report::IneqReport;

/// Below this modulus, `|φ|^q` is taken to be zero.
const MODULUS_FLOOR: f64 = 1e-300;

/// Evaluator for `|E e^{itX}|` on `[-π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub enum CharEval {
    /// Horner evaluation of `Σ f(k) e^{ikt}`.
    Dense(Pmf),
    /// Product of Bernoulli moduli `√((1-λ_i) + λ_i cos t)` with `λ_i = 2σ_i²`.
    BernoulliProduct(Vec<f64>),
}

impl CharEval {
    pub fn from_pmf(f: &Pmf) -> Self {
        CharEval::Dense(f.clone())
    }

    /// Poisson-binomial with success probabilities `ps`.
    pub fn poisson_binomial(ps: &[f64]) -> Result<Self> {
        for &p in ps {
            check_range("p", p, (0.0..=1.0).contains(&p), "0 <= p <= 1")?;
        }
        Ok(CharEval::BernoulliProduct(
            ps.iter().map(|&p| 2.0 * p * (1.0 - p)).collect(),
        ))
    }

    /// `|φ(t)|`.
    pub fn modulus(&self, t: f64) -> f64 {
        match self {
            CharEval::Dense(f) => dense_modulus(f, t),
            CharEval::BernoulliProduct(lams) => lams
                .iter()
                .map(|&l| ((1.0 - l) + l * t.cos()).max(0.0).sqrt())
                .product(),
        }
    }

    /// `log |φ(t)|`, or −∞ where the modulus vanishes.
    fn log_modulus(&self, t: f64) -> f64 {
        match self {
            CharEval::Dense(f) => dense_modulus(f, t).ln(),
            CharEval::BernoulliProduct(lams) => {
                let c = t.cos();
                0.5 * lams
                    .iter()
                    .map(|&l| ((1.0 - l) + l * c).max(0.0).ln())
                    .sum::<f64>()
            }
        }
    }

    /// `|φ(t)|^q` as `exp(q log|φ|)`, zero where `|φ| < 1e-300`.
    pub fn modulus_pow(&self, t: f64, q: f64) -> f64 {
        let lm = self.log_modulus(t);
        if lm < MODULUS_FLOOR.ln() {
            0.0
        } else {
            (q * lm).exp()
        }
    }

    /// `‖φ‖_q^q = (1/2π) ∫_{-π}^{π} |φ|^q dt`, to absolute error `tol`.
    pub fn lq_norm(&self, q: f64, tol: f64) -> Result<f64> {
        check_range("q", q, q >= 1.0 && q.is_finite(), "q >= 1")?;
        check_range("tol", tol, (1e-12..=1e-6).contains(&tol), "1e-12 <= tol <= 1e-6")?;
        // Even integrand: (1/π) ∫_0^π, so the integral itself needs π·tol.
        let quad = integrate(|t| self.modulus_pow(t, q), 0.0, PI, PI * tol)?;
        Ok(quad.value / PI)
    }
}

fn dense_modulus(f: &Pmf, t: f64) -> f64 {
    let z = Complex64::from_polar(1.0, t);
    f.probs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &p| acc * z + p)
        .norm()
}

/// `|Σ f(k) e^{ikt}|` by Horner's rule in `e^{it}`.
pub fn char_modulus(f: &Pmf, t: f64) -> f64 {
    dense_modulus(f, t)
}

/// `‖f̂‖_q^q` by adaptive quadrature on `[0, π]`.
pub fn char_lq_norm(f: &Pmf, q: f64, tol: f64) -> Result<f64> {
    CharEval::from_pmf(f).lq_norm(q, tol)
}

/// Checks `‖f‖_p ≤ ‖f̂‖_q` with `1/p + 1/q = 1`, `p ∈ [2, ∞]`.
///
/// The quadrature error `tol` on `‖f̂‖_q^q` is propagated through the
/// `1/q`-th root into the report tolerance.
pub fn hausdorff_young_check(f: &Pmf, p: f64, tol: f64) -> Result<IneqReport> {
    check_range("p", p, p >= 2.0, "p >= 2")?;
    let q = if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
    let lhs = if p.is_infinite() {
        f.max_mass()
    } else {
        crate::sum::ksum(f.probs().iter().map(|&x| x.powf(p))).powf(1.0 / p)
    };
    let power = char_lq_norm(f, q, tol)?;
    let rhs = power.powf(1.0 / q);
    // |x^{1/q} - y^{1/q}| <= (1/q) min(x,y)^{1/q - 1} |x - y|
    let floor = (power - tol).max(f64::MIN_POSITIVE);
    let propagated = tol * floor.powf(1.0 / q - 1.0) / q;
    Ok(IneqReport::le("hausdorff_young", lhs, rhs, tol.max(propagated))
        .with_param("p", p)
        .with_param("q", q)
        .with_param("quadrature_tol", tol))
}
