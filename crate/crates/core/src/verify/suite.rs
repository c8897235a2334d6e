//! Seeded random suites. Instance `i` of a run draws from its own ChaCha
//! stream, so any single instance can be replayed from `(seed, i)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::families::{bernoulli, poisson_binomial, symmetric_geometric_half, uniform};
use crate::pmf::Pmf;
use crate::renyi::RenyiOrder;
use crate::report::IneqReport;
use crate::weights::{Rational, WeightVector};

use super::lo::{lo_q_bound, lo_renyi_bound};
use super::{
    check_bc_upper, check_bernoulli_repi, check_bmm_lower, check_entropy_variance_bound, check_min_epi,
    check_min_epi_reversal, check_small_value_min_epi,
};

pub const DEFAULT_SEED: u64 = 0x2e4f_1d0c;

/// The generator for instance `id` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// A probability in `(0, 1)`, biased toward the ends now and then.
pub fn random_p<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    match rng.random_range(0..10) {
        0 => 10f64.powf(-rng.random_range(1.0..6.0)),
        1 => 1.0 - 10f64.powf(-rng.random_range(1.0..6.0)),
        _ => rng.random_range(0.001..0.999),
    }
}

pub fn random_ps<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| random_p(rng)).collect()
}

/// A Bernoulli, uniform, arbitrary (possibly gappy) or geometric-like pmf
/// with at most `max_support` atoms and a random offset.
pub fn random_pmf<R: Rng + ?Sized>(rng: &mut R, max_support: usize) -> Pmf {
    let max_support = max_support.max(1);
    let offset = rng.random_range(-5..=5);
    let f = match rng.random_range(0..4) {
        0 => bernoulli(random_p(rng)).expect("p in (0,1)"),
        1 => {
            let k = rng.random_range(0..max_support) as i64;
            uniform(0, k).expect("k >= 0")
        }
        2 => {
            let len = rng.random_range(1..=max_support);
            let mut w: Vec<f64> = (0..len)
                .map(|_| {
                    if rng.random_bool(0.3) {
                        0.0
                    } else {
                        rng.random::<f64>().powi(3)
                    }
                })
                .collect();
            w[0] += 1e-3;
            Pmf::from_weights(0, w).expect("positive total")
        }
        _ => {
            let len = rng.random_range(1..=max_support);
            let r: f64 = rng.random_range(0.2..0.95);
            let w: Vec<f64> = (0..len).map(|k| r.powi(k as i32)).collect();
            Pmf::from_weights(0, w).expect("positive total")
        }
    };
    f.shift(offset)
}

/// Nonzero rational weights `a/b` with `|a| ≤ 9`, `1 ≤ b ≤ 6`.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightVector {
    let ws = (0..n)
        .map(|_| {
            let mut a: i64 = rng.random_range(1..=9);
            if rng.random_bool(0.5) {
                a = -a;
            }
            Rational::new(a, rng.random_range(1..=6))
        })
        .collect();
    WeightVector::new(ws).expect("weights are nonzero")
}

/// A symmetric log-concave law: a fair binomial, a symmetric geometric on
/// half-integers, or a centered uniform.
pub fn random_symmetric_log_concave<R: Rng + ?Sized>(rng: &mut R) -> Pmf {
    match rng.random_range(0..3) {
        0 => {
            let k = rng.random_range(0..=10);
            poisson_binomial(&vec![0.5; 2 * k]).expect("valid")
        }
        1 => symmetric_geometric_half(rng.random_range(0.01..0.95)).expect("valid"),
        _ => {
            let k = rng.random_range(0..20);
            uniform(-k, k).expect("valid")
        }
    }
}

/// Every report of a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteRun {
    pub name: String,
    pub seed: u64,
    pub instances: usize,
    pub reports: Vec<IneqReport>,
}

impl SuiteRun {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&IneqReport> {
        self.reports.iter().filter(|r| !r.pass).collect()
    }

    /// Smallest value of a numeric parameter over reports with `name`.
    pub fn min_param(&self, name: &str, key: &str) -> Option<f64> {
        self.reports
            .iter()
            .filter(|r| r.name == name)
            .filter_map(|r| r.param_f64(key))
            .reduce(f64::min)
    }

    pub fn min_slack(&self) -> f64 {
        self.reports.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min)
    }
}

/// Runs `instances` independent draws of `make` in parallel. Reports come
/// back in instance order, each tagged with the seed and instance id.
pub fn run_suite<F>(name: &str, seed: u64, instances: usize, make: F) -> Result<SuiteRun>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<IneqReport>> + Sync,
{
    let per: Vec<Vec<IneqReport>> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i as u64);
            Ok(make(&mut rng)?
                .into_iter()
                .map(|r| r.with_seed(seed).with_param("instance", i))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(SuiteRun {
        name: name.to_string(),
        seed,
        instances,
        reports: per.into_iter().flatten().collect(),
    })
}

fn random_ps_list<R: Rng + ?Sized>(rng: &mut R, n_max: usize, per_factor: usize) -> Vec<Vec<f64>> {
    let n = rng.random_range(1..=n_max.max(1));
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=per_factor.max(1));
            random_ps(rng, k)
        })
        .collect()
}

pub fn min_epi_suite(seed: u64, instances: usize, n_max: usize, max_support: usize) -> Result<SuiteRun> {
    run_suite("min_epi", seed, instances, |rng| {
        let n = rng.random_range(1..=n_max.max(1));
        let fs: Vec<Pmf> = (0..n).map(|_| random_pmf(rng, max_support)).collect();
        check_min_epi(&fs)
    })
}

pub fn repi_suite(seed: u64, instances: usize, n_max: usize, alpha: RenyiOrder) -> Result<SuiteRun> {
    run_suite("bernoulli_repi", seed, instances, |rng| {
        let ps = random_ps_list(rng, n_max, 2);
        Ok(vec![check_bernoulli_repi(&ps, alpha)?])
    })
}

pub fn reversal_suite(seed: u64, instances: usize, n_max: usize) -> Result<SuiteRun> {
    run_suite("min_epi_reversal", seed, instances, |rng| {
        let ps = random_ps_list(rng, n_max, 2);
        Ok(vec![check_min_epi_reversal(&ps)?])
    })
}

pub fn small_value_suite(seed: u64, instances: usize, n_max: usize) -> Result<SuiteRun> {
    run_suite("small_value_min_epi", seed, instances, |rng| {
        let n = rng.random_range(1..=n_max.max(1));
        let fs: Vec<Pmf> = (0..n)
            .map(|_| {
                let off = rng.random_range(-3..=3);
                bernoulli(random_p(rng)).expect("valid").shift(off)
            })
            .collect();
        Ok(vec![check_small_value_min_epi(&fs)?])
    })
}

pub fn bc_suite(seed: u64, instances: usize, max_support: usize) -> Result<SuiteRun> {
    run_suite("bc_upper", seed, instances, |rng| {
        Ok(vec![check_bc_upper(&random_pmf(rng, max_support))])
    })
}

pub fn bmm_suite(seed: u64, instances: usize) -> Result<SuiteRun> {
    run_suite("bmm_lower", seed, instances, |rng| {
        Ok(vec![check_bmm_lower(&random_symmetric_log_concave(rng))?])
    })
}

pub fn entropy_variance_suite(seed: u64, instances: usize, n_max: usize, alpha: RenyiOrder) -> Result<SuiteRun> {
    run_suite("entropy_variance", seed, instances, |rng| {
        let n = rng.random_range(1..=n_max.max(1));
        check_entropy_variance_bound(&random_ps(rng, n), alpha)
    })
}

pub fn lo_suite(seed: u64, instances: usize, n_max: usize, alpha: RenyiOrder) -> Result<SuiteRun> {
    run_suite("littlewood_offord", seed, instances, |rng| {
        let n = rng.random_range(1..=n_max.max(1));
        let v = random_weights(rng, n);
        let ps = random_ps(rng, n);
        let mut out = lo_q_bound(&v, &ps)?;
        out.extend(lo_renyi_bound(&v, &ps, alpha)?);
        Ok(out)
    })
}
