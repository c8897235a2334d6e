//! Convolution of pmfs: exact direct summation and an FFT path for long
//! supports.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::sum::{ksum, KahanSum};

/// Combined support length above which [`convolve_auto`] may use the FFT.
pub const FFT_THRESHOLD: usize = 1024;

/// Below this, direct summation beats the FFT even for long partners.
const FFT_MIN_FACTOR: usize = 64;

/// FFT round-off more negative than this is treated as an error.
pub const FFT_NEGATIVE_LIMIT: f64 = 1e-10;

/// Exact dense convolution `f * g` with compensated summation per entry.
pub fn convolve(f: &Pmf, g: &Pmf) -> Pmf {
    let (a, b) = (f.probs(), g.probs());
    let n = a.len() + b.len() - 1;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc = KahanSum::new();
        for i in lo..=hi {
            acc.add(a[i] * b[k - i]);
        }
        out.push(acc.value());
    }
    // Products of positive ends stay positive, so only underflowed ends can
    // be trimmed here.
    Pmf::trimmed(f.offset() + g.offset(), out).expect("convolution of valid pmfs")
}

/// Convolution through a complex FFT of the zero-padded mass vectors.
///
/// Round-off negatives of magnitude at most [`FFT_NEGATIVE_LIMIT`] are
/// clamped to zero and the result renormalized; larger ones are an error.
pub fn convolve_fft(f: &Pmf, g: &Pmf) -> Result<Pmf> {
    let n = f.len() + g.len() - 1;
    if n == 1 {
        return Ok(Pmf::dirac(f.offset() + g.offset()));
    }
    let size = n.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);

    let pad = |p: &[f64]| {
        let mut v: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        v.resize(size, Complex64::new(0.0, 0.0));
        v
    };
    let mut fa = pad(f.probs());
    let mut fb = pad(g.probs());
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inv.process(&mut fa);

    let scale = 1.0 / size as f64;
    let mut out = Vec::with_capacity(n);
    for (i, c) in fa.iter().take(n).enumerate() {
        let v = c.re * scale;
        if v < -FFT_NEGATIVE_LIMIT {
            return Err(Error::FftNegative { index: i, value: v });
        }
        out.push(v.max(0.0));
    }
    let total = ksum(out.iter().copied());
    for v in &mut out {
        *v /= total;
    }
    Pmf::trimmed(f.offset() + g.offset(), out)
}

/// Direct convolution for short supports, FFT otherwise.
pub fn convolve_auto(f: &Pmf, g: &Pmf) -> Pmf {
    let n = f.len() + g.len() - 1;
    if n > FFT_THRESHOLD && f.len().min(g.len()) > FFT_MIN_FACTOR {
        if let Ok(h) = convolve_fft(f, g) {
            return h;
        }
    }
    convolve(f, g)
}

/// `f_1 * ⋯ * f_n`; the empty product is the point mass at zero.
pub fn convolve_all<'a, I>(fs: I) -> Pmf
where
    I: IntoIterator<Item = &'a Pmf>,
{
    fs.into_iter()
        .fold(Pmf::dirac(0), |acc, f| convolve_auto(&acc, f))
}

/// `n`-fold convolution power by repeated squaring.
pub fn convolve_power(f: &Pmf, n: u32) -> Pmf {
    let mut result = Pmf::dirac(0);
    let mut base = f.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = convolve_auto(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = convolve_auto(&base, &base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pmf(offset: i64, p: &[f64]) -> Pmf {
        Pmf::new(offset, p.to_vec()).unwrap()
    }

    #[test]
    fn fair_coins() {
        let b = pmf(0, &[0.5, 0.5]);
        let s = convolve(&b, &b);
        assert_eq!(s.offset(), 0);
        assert_eq!(s.probs(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn dirac_translates() {
        let f = pmf(-2, &[0.1, 0.2, 0.7]);
        let g = convolve(&f, &Pmf::dirac(5));
        assert_eq!(g, f.shift(5));
        assert_eq!(convolve_fft(&Pmf::dirac(2), &Pmf::dirac(-7)).unwrap(), Pmf::dirac(-5));
    }

    #[test]
    fn fft_matches_direct_small() {
        let f = pmf(3, &[0.1, 0.0, 0.4, 0.2, 0.3]);
        let g = pmf(-1, &[0.6, 0.4]);
        let a = convolve(&f, &g);
        let b = convolve_fft(&f, &g).unwrap();
        assert_eq!(a.offset(), b.offset());
        for (x, y) in a.probs().iter().zip(b.probs()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn power_by_squaring() {
        let b = pmf(0, &[0.5, 0.5]);
        let p = convolve_power(&b, 5);
        assert_eq!(p.len(), 6);
        assert!((p.mass(2) - 10.0 / 32.0).abs() < 1e-15);
        assert_eq!(convolve_power(&b, 0), Pmf::dirac(0));
    }
}
