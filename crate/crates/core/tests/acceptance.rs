//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Oracles here are written independently of the library paths
//! they check.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zrenyi::bounds::{
    bernoulli_exp_charfn_bound, entropy_variance_lower_bound, gauss_ratio, np_crossing_level,
    np_phi_monotone, np_single_crossing, BoundFn, MIN_EPI_IMPROVED,
};
use zrenyi::exact::{poisson_binomial_exact, rational_from_f64};
use zrenyi::extremal::{
    enumerate_extreme_points, min_entropy_over_extremes, sample_density_bounded, DensityBound, Guard,
};
use zrenyi::families::{bernoulli, poisson_truncated, uniform};
use zrenyi::verify::lo::q_exact;
use zrenyi::verify::scan::{shannon_ratio, tightness_scan, Family};
use zrenyi::verify::suite::{entropy_variance_suite, min_epi_suite, random_pmf, random_weights};
use zrenyi::verify::{check_entropy_variance_bound, check_min_epi};
use zrenyi::{
    char_lq_norm, convolve, convolve_all, convolve_fft, delta, renyi_entropy, CharEval, Pmf, Rational,
    RenyiOrder,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn inf() -> RenyiOrder {
    RenyiOrder::Infinity
}

// Pascal's triangle in u128; binom(60, 30) ≈ 1.2e17 fits easily.
fn pascal(n_max: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

fn ac1_equality_cases() -> Outcome {
    let b = bernoulli(0.5).map_err(e)?;
    let var = b.variance();
    ensure(var == 0.25, || format!("Var(Bernoulli(1/2)) = {var}"))?;
    for a in [RenyiOrder::Finite(2.0), RenyiOrder::Finite(5.0), inf()] {
        let d = delta(&b, a);
        ensure((d - 3.0).abs() <= 1e-12 && (12.0 * var - 3.0).abs() <= 1e-12, || {
            format!("alpha {a}: delta {d}")
        })?;
    }
    let mut worst: f64 = 0.0;
    for m in 1..=100i64 {
        let u = uniform(0, m - 1).map_err(e)?;
        let target = (m * m - 1) as f64;
        let d = delta(&u, inf());
        let v12 = 12.0 * u.variance();
        worst = worst.max((d - target).abs()).max((v12 - target).abs());
        ensure((d - target).abs() <= 1e-9 && (v12 - target).abs() <= 1e-9, || {
            format!("m {m}: delta {d}, 12 var {v12}, expected {target}")
        })?;
    }
    Ok(format!("max |error| over uniforms {worst:.1e}"))
}

fn ac2_min_epi_ratio() -> Outcome {
    let b = bernoulli(0.5).map_err(e)?;
    let r = check_min_epi(&[b.clone(), b]).map_err(e)?;
    let ratio = r[0].param_f64("ratio").unwrap_or(f64::NAN);
    ensure(ratio == 0.5, || format!("fair coin ratio {ratio}"))?;
    let run = min_epi_suite(2024, 10_000, 8, 50).map_err(e)?;
    let min_ratio = run.min_param("min_epi_improved", "ratio").unwrap_or(f64::NAN);
    ensure(run.all_pass(), || {
        format!("failing report: {}", serde_json::to_string(run.failures()[0]).unwrap())
    })?;
    ensure(min_ratio >= MIN_EPI_IMPROVED, || format!("min ratio {min_ratio}"))?;
    Ok(format!(
        "ratio(2 fair coins) = 0.5; min ratio over 10^4 random sums {min_ratio:.4} >= {MIN_EPI_IMPROVED:.6}"
    ))
}

fn ac3_bernoulli_lq() -> Outcome {
    let qs = [1.0, 1.5, 2.0, 4.0, 10.0, 100.0];
    let mut min_slack = f64::INFINITY;
    for k in 1..=50 {
        let p = k as f64 / 51.0;
        let eval = CharEval::from_pmf(&bernoulli(p).map_err(e)?);
        let s2 = p * (1.0 - p);
        for q in qs {
            let lhs = eval.lq_norm(q, 1e-10).map_err(e)?;
            let z = (6.0 * s2 * q).sqrt();
            let rhs = (PI / 2.0).sqrt() * libm::erf(z / 2f64.sqrt()) / z;
            min_slack = min_slack.min(rhs - lhs);
            ensure(rhs - lhs >= 0.0, || format!("p {p} q {q}: {lhs} > {rhs}"))?;
        }
    }
    Ok(format!("300 (p, q) pairs, min slack {min_slack:.3e}"))
}

fn ac4_entropy_variance() -> Outcome {
    let alphas = [RenyiOrder::Finite(2.0), RenyiOrder::Finite(4.0), inf()];
    for (i, &a) in alphas.iter().enumerate() {
        let run = entropy_variance_suite(400 + i as u64, 1000, 15, a).map_err(e)?;
        ensure(run.all_pass(), || {
            format!("failing report: {}", serde_json::to_string(run.failures()[0]).unwrap())
        })?;
    }
    // Sharpness at the small-variance end.
    let p = 1e-4;
    let poisson = poisson_truncated(1e-4, 1e-18).map_err(e)?;
    let mut worst: f64 = 0.0;
    for a in alphas {
        let b = check_entropy_variance_bound(&[p], a).map_err(e)?;
        let bound = entropy_variance_lower_bound(1e-4, a).map_err(e)?;
        let hp = renyi_entropy(&poisson, a);
        let rel = [
            b[0].slack / b[0].lhs,
            b[1].slack / b[1].lhs,
            (hp - bound.integral_form) / hp,
            (hp - bound.max_form) / hp,
        ];
        for (j, r) in rel.into_iter().enumerate() {
            ensure((0.0..1e-3).contains(&r), || format!("alpha {a}, case {j}: relative slack {r}"))?;
            worst = worst.max(r);
        }
        for fam in [Family::BernoulliP, Family::PoissonLambda] {
            let t = tightness_scan(fam, &[1e-4], a).map_err(e)?;
            let r = t.column_f64("slack")[0] / t.column_f64("lhs")[0];
            ensure((0.0..1e-3).contains(&r), || format!("{fam} alpha {a}: relative slack {r}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("3000 random Poisson-binomials pass; worst relative slack at 1e-4: {worst:.2e}"))
}

// Exact max mass of Σ v_i B_i by listing all 2^n outcomes.
fn enumerate_q(v: &[Rational], ps: &[BigRational]) -> BigRational {
    let n = v.len();
    let mut masses: BTreeMap<Rational, BigRational> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let mut x = Rational::zero();
        let mut pr = BigRational::one();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                x += v[i];
                pr *= &ps[i];
            } else {
                pr *= BigRational::one() - &ps[i];
            }
        }
        *masses.entry(x).or_insert_with(BigRational::zero) += pr;
    }
    masses.into_values().max().unwrap()
}

fn ac5_littlewood_offord() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for inst in 0..300 {
        let n = rng.random_range(1..=12);
        let v = random_weights(&mut rng, n);
        let ps: Vec<f64> = (0..n)
            .map(|_| rng.random_range(1..16) as f64 / 16.0)
            .collect();
        let exact: Vec<BigRational> = ps.iter().map(|&p| rational_from_f64(p).unwrap()).collect();
        let q = q_exact(&v, &ps).map_err(e)?;
        let oracle = enumerate_q(v.weights(), &exact);
        ensure(q == oracle, || format!("instance {inst}: {q} vs {oracle}"))?;
    }
    let tri = pascal(60);
    let half = BigRational::new(1.into(), 2.into());
    let mut ratio60 = f64::NAN;
    for n in 1..=60usize {
        let q = poisson_binomial_exact(&vec![half.clone(); n]).map_err(e)?.max_mass();
        let erdos = BigRational::new(BigInt::from(tri[n][n / 2]), BigInt::from(1u128 << n));
        ensure(q == erdos, || format!("n {n}: {q} vs {erdos}"))?;
        if n == 60 {
            let qf = tri[60][30] as f64 / 2f64.powi(60);
            ratio60 = gauss_ratio((6.0 * 15.0f64).sqrt()) / qf;
        }
    }
    ensure((1.2..=1.35).contains(&ratio60), || format!("ratio at n = 60: {ratio60}"))?;
    Ok(format!("300 exact instances match enumeration; Erdős values exact to n = 60; bound/Q at 60 = {ratio60:.4}"))
}

fn ac6_single_crossing() -> Outcome {
    let s_grid = [1.0, 2.0, 4.0, 8.0, 16.0];
    let (mut crossings, mut none, mut skipped) = (0, 0, 0);
    for k in 1..=100 {
        let lam = k as f64 / 200.0;
        let w = BoundFn::w_lambda(lam).map_err(e)?;
        let v = BoundFn::v_lambda(lam).map_err(e)?;
        match np_single_crossing(&w, &v, 4096).map_err(|x| format!("lambda {lam}: {x}"))? {
            Some(_) => crossings += 1,
            None => none += 1,
        }
        match np_crossing_level(&w, &v, 4096).map_err(e)? {
            Some(t0) => {
                let r = np_phi_monotone(&w, &v, t0, &s_grid).map_err(|x| format!("lambda {lam}: {x}"))?;
                ensure(r.pass, || format!("lambda {lam}: {r:?}"))?;
            }
            None => skipped += 1,
        }
    }
    Ok(format!(
        "100 lambdas: {crossings} with one crossing, {none} with none; phi monotone on all but {skipped} (no positive crossing level)"
    ))
}

fn ac7_exp_charfn() -> Outcome {
    let grid: Vec<f64> = (0..1000).map(|i| -PI + 2.0 * PI * i as f64 / 999.0).collect();
    let mut worst = f64::INFINITY;
    for k in 1..=95 {
        let p = k as f64 / 96.0;
        let r = bernoulli_exp_charfn_bound(&bernoulli(p).map_err(e)?, &grid).map_err(e)?;
        worst = worst.min(r.slack);
        ensure(r.slack >= -1e-14, || format!("p {p}: {r:?}"))?;
    }
    Ok(format!("95 x 1000 grid, min slack {worst:.2e}"))
}

fn ac8_shannon() -> Outcome {
    let small = shannon_ratio(1e-3, 50).map_err(e)?;
    let large = shannon_ratio(1e-1, 50).map_err(e)?;
    ensure(small < large, || format!("{small} >= {large}"))?;
    Ok(format!("n = 50: ratio {small:.4} at 1e-3 < {large:.4} at 1e-1"))
}

fn ac9_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let la = rng.random_range(1..=1500);
        let lb = rng.random_range(1..=1500);
        let f = Pmf::from_weights(rng.random_range(-9..9), (0..la).map(|_| rng.random::<f64>()).collect())
            .map_err(e)?;
        let g = Pmf::from_weights(rng.random_range(-9..9), (0..lb).map(|_| rng.random::<f64>()).collect())
            .map_err(e)?;
        let direct = convolve(&f, &g);
        let fft = convolve_fft(&f, &g).map_err(e)?;
        let lo = direct.offset().min(fft.offset());
        let hi = direct.max_support().max(fft.max_support());
        let d = (lo..=hi)
            .map(|k| (direct.mass(k) - fft.mass(k)).abs())
            .fold(0.0, f64::max);
        worst = worst.max(d);
        ensure(d <= 1e-12, || format!("pair {i}: max difference {d:e}"))?;
    }
    let tol = 1e-10;
    let mut worst_p: f64 = 0.0;
    for i in 0..100 {
        let f = random_pmf(&mut rng, 60);
        let lhs = char_lq_norm(&f, 2.0, tol).map_err(e)?;
        let rhs: f64 = f.probs().iter().map(|p| p * p).sum();
        worst_p = worst_p.max((lhs - rhs).abs());
        ensure((lhs - rhs).abs() <= 2.0 * tol, || format!("pmf {i}: {lhs} vs {rhs}"))?;
    }
    Ok(format!("fft vs direct max diff {worst:.1e}; Parseval max diff {worst_p:.1e}"))
}

fn ac10_extreme_points() -> Outcome {
    let tri = pascal(9);
    let mut checked = 0usize;
    for m in 0..=8usize {
        let size = m + 1;
        let mut cs: Vec<Rational> = Vec::new();
        for j in 1..=size as i64 {
            for (a, b) in [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4), (2, 5)] {
                let c = Rational::from_integer(j) + Rational::new(a, b);
                if c > Rational::one() && c <= Rational::from_integer(size as i64) {
                    cs.push(c);
                }
            }
        }
        for c in cs {
            let k = c.to_integer() as usize;
            let expect = if c.is_integer() {
                tri[size][k]
            } else {
                tri[size][k] * (size - k) as u128
            };
            let pts = enumerate_extreme_points(DensityBound::new(c).map_err(e)?, m).map_err(e)?;
            ensure(pts.len() as u128 == expect, || format!("m {m} C {c}: {} vs {expect}", pts.len()))?;
            let mut seen = std::collections::HashSet::new();
            for p in &pts {
                let masses = p.rational_masses();
                let cap = c.recip();
                let total: Rational = masses.iter().copied().sum();
                let at_cap = masses.iter().filter(|&&x| x == cap).count();
                let inner: Vec<Rational> = masses
                    .iter()
                    .copied()
                    .filter(|&x| x != cap && !x.is_zero())
                    .collect();
                let residual = Rational::one() - Rational::from_integer(k as i64) / c;
                let ok = total == Rational::one()
                    && at_cap == k
                    && match inner.as_slice() {
                        [] => c.is_integer(),
                        [r] => *r == residual && *r > Rational::zero() && *r < cap,
                        _ => false,
                    };
                ensure(ok, || format!("m {m} C {c}: bad point {masses:?}"))?;
                ensure(seen.insert(masses), || format!("m {m} C {c}: duplicate point"))?;
            }
            checked += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = [Rational::new(3, 2), Rational::from_integer(2), Rational::new(5, 2), Rational::from_integer(3)];
    let alphas = [RenyiOrder::One, RenyiOrder::Finite(2.0), inf()];
    let mut cache: HashMap<(Vec<Rational>, usize, usize), f64> = HashMap::new();
    let mut min_gap = f64::INFINITY;
    for t in 0..100 {
        let n = rng.random_range(1..=3);
        let m = rng.random_range(1..=6usize);
        let ai = rng.random_range(0..alphas.len());
        let cs: Vec<Rational> = (0..n)
            .map(|_| loop {
                let c = pool[rng.random_range(0..pool.len())];
                if c <= Rational::from_integer(m as i64 + 1) {
                    break c;
                }
            })
            .collect();
        let key = (cs.clone(), m, ai);
        let min = match cache.get(&key) {
            Some(&h) => h,
            None => {
                let bounds: Vec<DensityBound> = cs.iter().map(|&c| DensityBound::new(c).unwrap()).collect();
                let h = min_entropy_over_extremes(&bounds, m, alphas[ai], Guard::default())
                    .map_err(e)?
                    .entropy;
                cache.insert(key, h);
                h
            }
        };
        let fs: Vec<Pmf> = cs
            .iter()
            .map(|&c| sample_density_bounded(&mut rng, DensityBound::new(c).unwrap(), m))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let h = renyi_entropy(&convolve_all(fs.iter()), alphas[ai]);
        min_gap = min_gap.min(h - min);
        ensure(h >= min - 1e-9, || format!("tuple {t}: H = {h} < min {min} (Cs {cs:?}, m {m})"))?;
    }
    Ok(format!(
        "{checked} (C, m) enumerations exact; 100 random tuples above the extreme-point minimum (min gap {min_gap:.2e})"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome, Duration); 10] = [
        ("AC1", "equality cases", ac1_equality_cases, Duration::from_secs(1)),
        ("AC2", "min-EPI extremal ratio", ac2_min_epi_ratio, Duration::from_secs(60)),
        ("AC3", "Bernoulli L^q bound", ac3_bernoulli_lq, Duration::from_secs(30)),
        ("AC4", "entropy vs variance", ac4_entropy_variance, Duration::from_secs(30)),
        ("AC5", "Littlewood-Offord", ac5_littlewood_offord, Duration::from_secs(60)),
        ("AC6", "single crossing", ac6_single_crossing, Duration::from_secs(30)),
        ("AC7", "exponential charfn bound", ac7_exp_charfn, Duration::from_secs(10)),
        ("AC8", "Shannon failure scan", ac8_shannon, Duration::from_secs(10)),
        ("AC9", "oracle equivalences", ac9_oracles, Duration::from_secs(30)),
        ("AC10", "extreme points", ac10_extreme_points, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let over = took > budget;
        match (&out, over) {
            (Ok(msg), false) => println!("{id} PASS {title}: {msg} [{:.2}s]", took.as_secs_f64()),
            (Ok(msg), true) => {
                failed += 1;
                println!(
                    "{id} FAIL {title}: {msg} [{:.2}s exceeds {}s budget]",
                    took.as_secs_f64(),
                    budget.as_secs()
                )
            }
            (Err(msg), _) => {
                failed += 1;
                println!("{id} FAIL {title}: {msg} [{:.2}s]", took.as_secs_f64())
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
