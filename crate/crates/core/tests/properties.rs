use std::collections::BTreeMap;

use proptest::prelude::*;
use zrenyi::extremal::{majorizes, rearrange};
use zrenyi::families::weighted_bernoulli_sum;
use zrenyi::renyi::renyi_monotone_check;
use zrenyi::spectral::hausdorff_young_check;
use zrenyi::weights::WeightVector;
use zrenyi::{convolve, convolve_all, convolve_fft, renyi_entropy, Pmf, Rational, RenyiOrder};

const ORDERS: [RenyiOrder; 6] = [
    RenyiOrder::Zero,
    RenyiOrder::Finite(0.5),
    RenyiOrder::One,
    RenyiOrder::Finite(2.0),
    RenyiOrder::Finite(3.5),
    RenyiOrder::Infinity,
];

fn pmf_strategy(max_len: usize) -> impl Strategy<Value = Pmf> {
    (-20i64..20, prop::collection::vec(0.0f64..1.0, 1..max_len)).prop_map(|(off, mut w)| {
        w[0] += 1e-3;
        Pmf::from_weights(off, w).unwrap()
    })
}

// Concave log-masses: increments that only decrease.
fn log_concave_strategy() -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..2.0, prop::collection::vec(0.0f64..1.5, 0..8)).prop_map(|(start, drops)| {
        let mut slope = start;
        let mut logs = vec![0.0];
        for d in drops {
            slope -= d;
            logs.push(logs.last().unwrap() + slope);
        }
        let w: Vec<f64> = logs.iter().map(|l| l.exp()).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    })
}

// Places the masses in order with random gaps between them.
fn scatter(masses: &[f64], gaps: &[usize]) -> Pmf {
    let mut probs = Vec::new();
    for (i, &m) in masses.iter().enumerate() {
        if i > 0 {
            probs.extend(std::iter::repeat_n(0.0, gaps[i % gaps.len()]));
        }
        probs.push(m);
    }
    Pmf::from_weights(0, probs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convolution_moments_add(f in pmf_strategy(30), g in pmf_strategy(30)) {
        let h = convolve(&f, &g);
        prop_assert!((h.total_mass() - 1.0).abs() < 1e-12);
        let (mf, vf) = f.mean_var();
        let (mg, vg) = g.mean_var();
        let (mh, vh) = h.mean_var();
        prop_assert!((mh - mf - mg).abs() < 1e-9);
        prop_assert!((vh - vf - vg).abs() < 1e-9 * (1.0 + vh));
        prop_assert_eq!(h.offset(), f.offset() + g.offset());
    }

    #[test]
    fn convolution_commutes_and_fft_agrees(f in pmf_strategy(200), g in pmf_strategy(200)) {
        let a = convolve(&f, &g);
        let b = convolve(&g, &f);
        let c = convolve_fft(&f, &g).unwrap();
        for k in a.offset()..=a.max_support() {
            prop_assert!((a.mass(k) - b.mass(k)).abs() < 1e-15);
            prop_assert!((a.mass(k) - c.mass(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_decreases_in_order(f in pmf_strategy(40)) {
        prop_assert!(renyi_monotone_check(&f, &ORDERS).unwrap());
    }

    #[test]
    fn rearrangement_preserves_entropy(f in pmf_strategy(40)) {
        let g = rearrange(&f);
        prop_assert_eq!(rearrange(&g), g.clone());
        for a in ORDERS {
            prop_assert!((renyi_entropy(&f, a) - renyi_entropy(&g, a)).abs() < 1e-12);
        }
    }

    #[test]
    fn majorization_order_and_schur_concavity(
        f in pmf_strategy(10), g in pmf_strategy(10), h in pmf_strategy(10)
    ) {
        prop_assert!(majorizes(&f, &f));
        if majorizes(&f, &g) && majorizes(&g, &h) {
            prop_assert!(majorizes(&f, &h));
        }
        if majorizes(&f, &g) {
            for a in ORDERS {
                prop_assert!(renyi_entropy(&f, a) <= renyi_entropy(&g, a) + 1e-12);
            }
            if majorizes(&g, &f) {
                let mut x = f.probs().to_vec();
                let mut y = g.probs().to_vec();
                x.retain(|&p| p > 0.0);
                y.retain(|&p| p > 0.0);
                x.sort_by(f64::total_cmp);
                y.sort_by(f64::total_cmp);
                prop_assert_eq!(x.len(), y.len());
                for (p, q) in x.iter().zip(&y) {
                    prop_assert!((p - q).abs() < 1e-12);
                }
            }
        }
        // every law majorizes the uniform on at least as many atoms
        let n = f.len() as i64;
        prop_assert!(majorizes(&f, &zrenyi::families::uniform(0, n - 1).unwrap()));
    }

    #[test]
    fn rearranged_sums_have_less_entropy(
        parts in prop::collection::vec((log_concave_strategy(), prop::collection::vec(0usize..4, 1..4)), 1..4)
    ) {
        let fs: Vec<Pmf> = parts.iter().map(|(m, gaps)| scatter(m, gaps)).collect();
        let sharps: Vec<Pmf> = fs.iter().map(rearrange).collect();
        let sum = convolve_all(fs.iter());
        let sharp_sum = convolve_all(sharps.iter());
        prop_assert!(majorizes(&sharp_sum, &sum));
        for a in [RenyiOrder::Zero, RenyiOrder::Finite(0.5), RenyiOrder::One, RenyiOrder::Finite(2.0), RenyiOrder::Infinity] {
            prop_assert!(renyi_entropy(&sum, a) >= renyi_entropy(&sharp_sum, a) - 1e-12);
        }
    }

    #[test]
    fn hausdorff_young_holds(f in pmf_strategy(12), p in prop::sample::select(vec![2.0, 2.5, 4.0, f64::INFINITY])) {
        let r = hausdorff_young_check(&f, p, 1e-10).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn sign_reduction_against_enumeration(
        ws in prop::collection::vec((1i64..9, 1i64..5, any::<bool>()), 1..9),
        ps in prop::collection::vec(0.05f64..0.95, 8),
    ) {
        let v = WeightVector::new(
            ws.iter().map(|&(a, b, neg)| Rational::new(if neg { -a } else { a }, b)).collect(),
        ).unwrap();
        let n = v.len();
        let ps = &ps[..n];
        // 2^n outcomes summed by value of Σ v_i B_i.
        let mut law: BTreeMap<Rational, f64> = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            let mut x = Rational::from_integer(0);
            let mut pr = 1.0;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    x += v.weights()[i];
                    pr *= ps[i];
                } else {
                    pr *= 1.0 - ps[i];
                }
            }
            *law.entry(x).or_default() += pr;
        }
        let q_enum = law.values().copied().fold(0.0, f64::max);
        let f = weighted_bernoulli_sum(&v, ps).unwrap();
        prop_assert!((f.max_mass() - q_enum).abs() < 1e-12);

        let signs: Vec<i64> = v.signs().iter().map(|&s| s as i64).collect();
        let a = WeightVector::from_integers(&signs).unwrap();
        let g = weighted_bernoulli_sum(&a, ps).unwrap();
        prop_assert!(f.max_mass() <= g.max_mass() + 1e-12);
        for alpha in ORDERS {
            prop_assert!(renyi_entropy(&f, alpha) >= renyi_entropy(&g, alpha) - 1e-12);
        }
    }
}
