//! The density-bounded simplex `P_C(⟦m⟧) = {f on {0..m} : f ≤ 1/C}`, its
//! extreme points, rearrangement and majorization.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::convolve::convolve;
use crate::error::{check_range, Error, Result};
use crate::exact::binomial;
use crate::pmf::Pmf;
use crate::renyi::{renyi_entropy, RenyiOrder};
use crate::sum::ksum;
use crate::weights::{parse_rational, Rational};

/// Hard cap on extreme points per factor.
pub const MAX_POINTS_PER_FACTOR: u128 = 1_000_000;
/// Hard cap on tuples scanned by [`min_entropy_over_extremes`].
pub const MAX_TUPLES: u128 = 10_000_000;
/// Default limits on the number of factors and on `m`, liftable with
/// [`Guard::overridden`].
pub const SOFT_MAX_FACTORS: usize = 4;
pub const SOFT_MAX_M: usize = 8;

/// The bound `C > 1` in `f ≤ 1/C`, held as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DensityBound(Rational);

impl DensityBound {
    pub fn new(c: Rational) -> Result<Self> {
        if c <= Rational::one() {
            return Err(Error::OutOfRange {
                name: "C",
                value: c.to_f64().unwrap_or(f64::NAN),
                expected: "C > 1",
            });
        }
        Ok(DensityBound(c))
    }

    /// Doubles within 1e-12 of an integer are taken to be that integer;
    /// anything else becomes the closest small-denominator rational.
    pub fn from_f64(c: f64) -> Result<Self> {
        check_range("C", c, c.is_finite() && c > 1.0, "finite C > 1")?;
        let r = c.round();
        if (c - r).abs() <= 1e-12 {
            return Self::new(Rational::from_integer(r as i64));
        }
        let q = Ratio::<i64>::approximate_float(c)
            .ok_or_else(|| Error::Parse(format!("cannot represent C = {c}")))?;
        Self::new(q)
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn floor(&self) -> usize {
        self.0.floor().to_integer() as usize
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `1/C`.
    pub fn cap(&self) -> Rational {
        self.0.recip()
    }

    /// `1 − ⌊C⌋/C`.
    pub fn residual(&self) -> Rational {
        Rational::one() - Rational::from_integer(self.floor() as i64) / self.0
    }

    /// `|E(P_C(⟦m⟧))|`, or an error when `C > m + 1`.
    pub fn count_extreme_points(&self, m: usize) -> Result<u128> {
        let size = m + 1;
        if self.0 > Rational::from_integer(size as i64) {
            return Err(Error::EmptyPolytope {
                c: self.to_string(),
                size,
            });
        }
        let k = self.floor();
        let b = binomial(size as u64, k as u64)
            .to_u128()
            .ok_or(Error::Overflow("counting extreme points"))?;
        if self.is_integer() {
            Ok(b)
        } else {
            b.checked_mul((size - k) as u128)
                .ok_or(Error::Overflow("counting extreme points"))
        }
    }
}

impl fmt::Display for DensityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for DensityBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }
}

/// `1_A/C + (1 − ⌊C⌋/C)·1_{x}` on `⟦m⟧`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremePointSpec {
    pub c: DensityBound,
    pub m: usize,
    pub a: Vec<usize>,
    pub x: Option<usize>,
}

impl ExtremePointSpec {
    /// Exact masses on `0..=m`.
    pub fn rational_masses(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.m + 1];
        for &i in &self.a {
            out[i] = self.c.cap();
        }
        if let Some(x) = self.x {
            out[x] = self.c.residual();
        }
        out
    }

    pub fn to_pmf(&self) -> Pmf {
        let probs = self
            .rational_masses()
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect();
        Pmf::from_weights(0, probs).expect("extreme point masses are a pmf")
    }

    /// Checks the defining structure exactly: masses sum to one, all lie in
    /// `{0, 1/C}` except at most one, which is `1 − ⌊C⌋/C ∈ (0, 1/C)`.
    pub fn is_valid(&self) -> bool {
        let masses = self.rational_masses();
        let cap = self.c.cap();
        let total = masses.iter().fold(Rational::zero(), |s, &p| s + p);
        if total != Rational::one() || masses.iter().any(|&p| p > cap) {
            return false;
        }
        let inner: Vec<&Rational> = masses
            .iter()
            .filter(|p| !p.is_zero() && **p != cap)
            .collect();
        match inner.as_slice() {
            [] => self.c.is_integer(),
            [r] => **r == self.c.residual(),
            _ => false,
        }
    }
}

impl Serialize for ExtremePointSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExtremePointSpec", 4)?;
        st.serialize_field("C", &self.c.to_string())?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("A", &self.a)?;
        st.serialize_field("x", &self.x)?;
        st.end()
    }
}

/// `f^#`: the positive masses of `f` in support order, placed at `0, 1, …`.
pub fn rearrange(f: &Pmf) -> Pmf {
    let probs: Vec<f64> = f.probs().iter().copied().filter(|&p| p > 0.0).collect();
    Pmf::trimmed(0, probs).expect("rearranged masses still sum to one")
}

/// `f ≻ g`: every partial sum of the descending masses of `f` is at least
/// the corresponding one for `g`, within 1e-12.
pub fn majorizes(f: &Pmf, g: &Pmf) -> bool {
    let sorted = |h: &Pmf| {
        let mut v = h.probs().to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (sf, sg) = (sorted(f), sorted(g));
    let n = sf.len().max(sg.len());
    let (mut af, mut ag) = (0.0, 0.0);
    (0..n).all(|i| {
        af += sf.get(i).copied().unwrap_or(0.0);
        ag += sg.get(i).copied().unwrap_or(0.0);
        af >= ag - 1e-12
    })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All extreme points of `P_C(⟦m⟧)`, with `A` in lexicographic order and,
/// for each `A`, `x` increasing.
pub fn enumerate_extreme_points(c: DensityBound, m: usize) -> Result<Vec<ExtremePointSpec>> {
    let count = c.count_extreme_points(m)?;
    if count > MAX_POINTS_PER_FACTOR {
        return Err(Error::Guard {
            what: "extreme points per factor",
            value: count,
            limit: MAX_POINTS_PER_FACTOR,
        });
    }
    let size = m + 1;
    let k = c.floor();
    let mut out = Vec::with_capacity(count as usize);
    let mut a: Vec<usize> = (0..k).collect();
    loop {
        if c.is_integer() {
            out.push(ExtremePointSpec {
                c,
                m,
                a: a.clone(),
                x: None,
            });
        } else {
            for x in (0..size).filter(|x| !a.contains(x)) {
                out.push(ExtremePointSpec {
                    c,
                    m,
                    a: a.clone(),
                    x: Some(x),
                });
            }
        }
        if !next_combination(&mut a, size) {
            break;
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// Limits for the brute-force scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Guard {
    /// Lift the soft limits on `n` and `m`; hard limits still apply.
    pub override_soft: bool,
}

impl Guard {
    pub fn overridden() -> Self {
        Guard { override_soft: true }
    }
}

/// Smallest `H_α` over sums of extreme points, and a minimizing tuple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeMinimum {
    pub entropy: f64,
    pub alpha: RenyiOrder,
    pub minimizer: Vec<ExtremePointSpec>,
    pub tuples: u128,
}

/// Brute-force `min H_α(Z_1 + ⋯ + Z_n)` over `Z_i ∈ E(P_{C_i}(⟦m⟧))`.
///
/// Ties are broken by the lexicographically smallest tuple of indices into
/// the enumeration order, so the result does not depend on scheduling.
pub fn min_entropy_over_extremes(
    cs: &[DensityBound],
    m: usize,
    alpha: RenyiOrder,
    guard: Guard,
) -> Result<ExtremeMinimum> {
    if cs.is_empty() {
        return Err(Error::Precondition("need at least one factor".into()));
    }
    if !guard.override_soft && (cs.len() > SOFT_MAX_FACTORS || m > SOFT_MAX_M) {
        return Err(Error::Guard {
            what: if cs.len() > SOFT_MAX_FACTORS {
                "factors"
            } else {
                "m"
            },
            value: cs.len().max(m) as u128,
            limit: if cs.len() > SOFT_MAX_FACTORS {
                SOFT_MAX_FACTORS as u128
            } else {
                SOFT_MAX_M as u128
            },
        });
    }
    let mut tuples: u128 = 1;
    for c in cs {
        let k = c.count_extreme_points(m)?;
        tuples = tuples.saturating_mul(k);
        if k > MAX_POINTS_PER_FACTOR {
            return Err(Error::Guard {
                what: "extreme points per factor",
                value: k,
                limit: MAX_POINTS_PER_FACTOR,
            });
        }
    }
    if tuples > MAX_TUPLES {
        return Err(Error::Guard {
            what: "extreme-point tuples",
            value: tuples,
            limit: MAX_TUPLES,
        });
    }
    let specs: Vec<Vec<ExtremePointSpec>> = cs
        .iter()
        .map(|&c| enumerate_extreme_points(c, m))
        .collect::<Result<_>>()?;
    let pmfs: Vec<Vec<Pmf>> = specs
        .iter()
        .map(|s| s.iter().map(ExtremePointSpec::to_pmf).collect())
        .collect();

    let best = (0..pmfs[0].len())
        .into_par_iter()
        .map(|i| {
            let mut idx = vec![i];
            let mut best = Best::none();
            descend(&pmfs, &pmfs[0][i], &mut idx, alpha, &mut best);
            best
        })
        .reduce(Best::none, Best::min);

    Ok(ExtremeMinimum {
        entropy: best.h,
        alpha,
        minimizer: best
            .idx
            .iter()
            .enumerate()
            .map(|(j, &i)| specs[j][i].clone())
            .collect(),
        tuples,
    })
}

#[derive(Debug, Clone)]
struct Best {
    h: f64,
    idx: Vec<usize>,
}

impl Best {
    fn none() -> Self {
        Best {
            h: f64::INFINITY,
            idx: Vec::new(),
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.h.total_cmp(&other.h).then_with(|| {
            // Empty means "nothing found yet" and loses every tie.
            match (self.idx.is_empty(), other.idx.is_empty()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => self.idx.cmp(&other.idx),
            }
        })
    }

    fn min(self, other: Self) -> Self {
        if other.cmp_key(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

fn descend(pmfs: &[Vec<Pmf>], prefix: &Pmf, idx: &mut Vec<usize>, alpha: RenyiOrder, best: &mut Best) {
    let depth = idx.len();
    if depth == pmfs.len() {
        let h = renyi_entropy(prefix, alpha);
        let cand = Best {
            h,
            idx: idx.clone(),
        };
        if cand.cmp_key(best) == Ordering::Less {
            *best = cand;
        }
        return;
    }
    for (i, g) in pmfs[depth].iter().enumerate() {
        let next = convolve(prefix, g);
        idx.push(i);
        descend(pmfs, &next, idx, alpha, best);
        idx.pop();
    }
}

/// A random element of `P_C(⟦m⟧)`: random weights, rescaled and clipped at
/// `1/C` so that the clipped masses sum to one.
pub fn sample_density_bounded<R: Rng + ?Sized>(rng: &mut R, c: DensityBound, m: usize) -> Result<Pmf> {
    let size = m + 1;
    if c.value() > Rational::from_integer(size as i64) {
        return Err(Error::EmptyPolytope {
            c: c.to_string(),
            size,
        });
    }
    let cap = 1.0 / c.to_f64();
    let w: Vec<f64> = (0..size).map(|_| rng.random::<f64>() + 1e-3).collect();
    let clipped = |s: f64| ksum(w.iter().map(|&x| (s * x).min(cap)));
    // clipped(s) is increasing and reaches size·cap ≥ 1.
    let (mut lo, mut hi) = (0.0, 1.0);
    while clipped(hi) < 1.0 {
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if clipped(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut probs: Vec<f64> = w.iter().map(|&x| (hi * x).min(cap)).collect();
    // Pull any overshoot out of the unclipped entries so no mass exceeds 1/C.
    let excess = ksum(probs.iter().copied()) - 1.0;
    if let Some(j) = (0..size)
        .filter(|&j| probs[j] < cap)
        .max_by(|&a, &b| probs[a].total_cmp(&probs[b]))
    {
        probs[j] = (probs[j] - excess).max(0.0);
    }
    Pmf::new(0, probs)
}
