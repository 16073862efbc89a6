use proptest::prelude::*;

use zetadiv::divergence::ExactAlphaDivergence;
use zetadiv::family::{
    conjugate_value, cumulant, family_entropy, generalized_pmf, mle_fit, moment_from_natural,
    pareto_entropy, sample_pareto, sample_zeta, zeta_pmf, SampleKind,
};
use zetadiv::special::{
    bernoulli_numbers, hurwitz_log_weighted_series, hurwitz_zeta, log_weighted_zeta_series,
    zeta_even_exact, zeta_log_derivative, zeta_real,
};
use zetadiv::{
    alpha_divergence, hellinger_squared, kl_divergence, renyi, sharma_mittal, tsallis, ExactRational,
    Family, GeneralizedZetaParam, KlMethod, ParetoParam, SampleSet, SeriesPolicy, SharmaMittalSpec,
    ZetaParam,
};

fn policy() -> SeriesPolicy {
    SeriesPolicy::default()
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Zeta),
        Just(Family::Pareto),
        (2u64..6).prop_map(|k0| Family::Generalized { k0 }),
    ]
}

fn shape() -> impl Strategy<Value = f64> {
    1.2f64..20.0
}

// Special functions.

#[test]
fn even_zeta_exact_matches_float_up_to_64() {
    for two_n in (2..=64).step_by(2) {
        let exact = zeta_even_exact(two_n).unwrap().to_f64();
        let float = zeta_real(two_n as f64, &policy()).unwrap().value;
        assert!(((exact - float) / float).abs() < 1e-12, "2n = {two_n}");
    }
}

#[test]
fn bernoulli_recurrence_is_exact() {
    let n_max = 60;
    let b = bernoulli_numbers(n_max).unwrap();
    for m in 1..=n_max {
        let mut binom = ExactRational::one();
        let mut sum = ExactRational::zero();
        for (j, bj) in b.iter().enumerate().take(m + 1) {
            sum = sum + &binom * bj;
            binom = &binom * &ExactRational::new((m + 1 - j) as i64, (j + 1) as i64);
        }
        assert!(sum.is_zero(), "m = {m}: {sum}");
    }
}

#[test]
fn hurwitz_is_zeta_minus_head() {
    for s in [1.5, 2.0, 3.0, 6.0] {
        let z = zeta_real(s, &policy()).unwrap();
        for k0 in 1..=20u64 {
            let h = hurwitz_zeta(s, k0, &policy()).unwrap();
            let head: f64 = (1..k0).map(|i| (i as f64).powf(-s)).sum();
            let diff = (h.value - (z.value - head)).abs();
            assert!(diff <= h.truncation_bound + z.truncation_bound + 1e-15 * z.value, "s={s} k0={k0}: {diff:e}");
        }
    }
}

#[test]
fn zeta_approaches_one() {
    assert!(zeta_real(30.0, &policy()).unwrap().value - 1.0 < 1e-9);
    assert!(zeta_real(30.0, &policy()).unwrap().value > 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_derivative_identity(s in 1.1f64..=30.0) {
        let d = zeta_log_derivative(s, &policy()).unwrap();
        let l = log_weighted_zeta_series(s, &policy()).unwrap();
        let z = zeta_real(s, &policy()).unwrap();
        let ratio = l.value / z.value;
        let bound = d.truncation_bound + (l.truncation_bound + ratio * z.truncation_bound) / z.value;
        prop_assert!((d.value + ratio).abs() <= bound + 1e-14 * ratio, "s={}", s);
    }

    #[test]
    fn zeta_strictly_decreasing(a in 1.01f64..40.0, b in 1.01f64..40.0) {
        prop_assume!(a < b);
        prop_assert!(zeta_real(a, &policy()).unwrap().value > zeta_real(b, &policy()).unwrap().value);
    }

    #[test]
    fn refinement_stays_inside_certificate(s in 1.1f64..12.0, k0 in 1u64..4, n in 4usize..40, order in 1usize..6) {
        let coarse = SeriesPolicy { target_rel_error: 0.5, euler_maclaurin_cutoff: n, euler_maclaurin_order: order, ..policy() };
        let fine = SeriesPolicy { euler_maclaurin_cutoff: 2 * n, ..coarse };
        let a = hurwitz_zeta(s, k0, &coarse).unwrap();
        let b = hurwitz_zeta(s, k0, &fine).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.truncation_bound + 1e-15 * a.value);
        let a = hurwitz_log_weighted_series(s, k0, &coarse).unwrap();
        let b = hurwitz_log_weighted_series(s, k0, &fine).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.truncation_bound + 1e-15 * a.value.abs());
    }
}

// Families.

#[test]
fn pmf_is_exponential_family() {
    for s in [1.5, 2.0, 4.0, 12.0] {
        let p = ZetaParam::new(s).unwrap();
        let f = cumulant(Family::Zeta, s, &policy()).unwrap();
        for x in 1..=10_000u64 {
            let expected = (-s * (x as f64).ln() - f).exp();
            if expected < f64::MIN_POSITIVE {
                continue;
            }
            let got = zeta_pmf(p, x, &policy()).unwrap();
            assert!(((got - expected) / expected).abs() < 1e-12, "s={s} x={x}");
        }
    }
}

#[test]
fn unit_offset_reduces_to_zeta() {
    let g = Family::Generalized { k0: 1 };
    for s in [1.5, 2.0, 4.0, 12.0] {
        let p = ZetaParam::new(s).unwrap();
        let gp = GeneralizedZetaParam::new(s, 1).unwrap();
        for x in [1, 2, 7, 1000] {
            assert_eq!(generalized_pmf(gp, x, &policy()).unwrap(), zeta_pmf(p, x, &policy()).unwrap());
        }
        assert_eq!(cumulant(g, s, &policy()).unwrap(), cumulant(Family::Zeta, s, &policy()).unwrap());
        assert_eq!(
            family_entropy(g, s, &policy()).unwrap().value,
            family_entropy(Family::Zeta, s, &policy()).unwrap().value
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn negentropy_is_conjugate(fam in family(), s in 1.5f64..15.0) {
        let eta = moment_from_natural(fam, s, &policy()).unwrap();
        let conj = conjugate_value(fam, eta, 1e-15, &policy()).unwrap();
        let h = match fam {
            Family::Pareto => pareto_entropy(ParetoParam::new(s).unwrap()),
            _ => family_entropy(fam, s, &policy()).unwrap().value,
        };
        prop_assert!((conj + h).abs() < 1e-9, "{} s={}: {} vs {}", fam, s, conj, -h);
    }

    #[test]
    fn moment_map_increasing(fam in family(), a in shape(), b in shape()) {
        prop_assume!(a < b);
        let ea = moment_from_natural(fam, a, &policy()).unwrap().eta;
        let eb = moment_from_natural(fam, b, &policy()).unwrap().eta;
        prop_assert!(ea < eb);
    }

    #[test]
    fn cumulant_convex(fam in family(), a in shape(), b in shape(), t in 0.05f64..0.95) {
        prop_assume!((a - b).abs() > 1e-3);
        let fa = cumulant(fam, a, &policy()).unwrap();
        let fb = cumulant(fam, b, &policy()).unwrap();
        let fm = cumulant(fam, t * a + (1.0 - t) * b, &policy()).unwrap();
        prop_assert!(fm < t * fa + (1.0 - t) * fb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mle_is_stationary(s in 1.5f64..6.0, seed in any::<u64>(), pareto in any::<bool>()) {
        let tol = 1e-12;
        let (fam, data) = if pareto {
            (Family::Pareto, sample_pareto(ParetoParam::new(s).unwrap(), 2000, seed).unwrap())
        } else {
            (Family::Zeta, sample_zeta(ZetaParam::new(s).unwrap(), 2000, seed).unwrap())
        };
        match mle_fit(fam, &data, tol, &policy()) {
            Ok(fit) => {
                let eta = moment_from_natural(fam, fit.theta, &policy()).unwrap().eta;
                prop_assert!((eta + data.mean_log()).abs() <= 1e-10, "residual {:e}", eta + data.mean_log());
                prop_assert_eq!(fit.eta.eta, -data.mean_log());
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn sampling_is_deterministic(s in 1.2f64..8.0, seed in any::<u64>()) {
        let p = ZetaParam::new(s).unwrap();
        prop_assert_eq!(sample_zeta(p, 200, seed).unwrap(), sample_zeta(p, 200, seed).unwrap());
        let q = ParetoParam::new(s).unwrap();
        prop_assert_eq!(sample_pareto(q, 200, seed).unwrap(), sample_pareto(q, 200, seed).unwrap());
    }

    #[test]
    fn sample_text_round_trip(s in 1.2f64..8.0, seed in any::<u64>()) {
        let d = sample_zeta(ZetaParam::new(s).unwrap(), 100, seed).unwrap();
        prop_assert_eq!(SampleSet::parse(&d.to_string(), SampleKind::Discrete).unwrap(), d);
        let c = sample_pareto(ParetoParam::new(s).unwrap(), 100, seed).unwrap();
        prop_assert_eq!(SampleSet::parse(&c.to_string(), SampleKind::Continuous).unwrap(), c);
    }
}

// Divergences.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn skew_symmetry(fam in family(), s1 in shape(), s2 in shape(), alpha in 0.05f64..0.95) {
        let a = alpha_divergence(fam, s1, s2, alpha, &policy()).unwrap();
        let b = alpha_divergence(fam, s2, s1, 1.0 - alpha, &policy()).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-12 * a.value.max(1.0));
    }

    #[test]
    fn nonnegative_and_zero_only_on_diagonal(fam in family(), s1 in shape(), s2 in shape(), alpha in 0.05f64..0.95) {
        let p = policy();
        let values = [
            alpha_divergence(fam, s1, s2, alpha, &p).unwrap(),
            renyi(fam, s1, s2, alpha, &p).unwrap(),
            tsallis(fam, s1, s2, alpha, &p).unwrap(),
            sharma_mittal(fam, s1, s2, SharmaMittalSpec::new(alpha, 0.5).unwrap(), &p).unwrap(),
            kl_divergence(fam, s1, s2, KlMethod::LogSeries, &p).unwrap(),
        ];
        for v in &values {
            prop_assert!(v.value >= 0.0, "{} = {}", v.kind.as_str(), v.value);
            if (s1 - s2).abs() > 1e-3 {
                prop_assert!(v.value > v.certificate.bound(), "{} = {}", v.kind.as_str(), v.value);
            }
        }
        for v in [
            alpha_divergence(fam, s1, s1, alpha, &p).unwrap(),
            kl_divergence(fam, s1, s1, KlMethod::FenchelYoung, &p).unwrap(),
            renyi(fam, s2, s2, alpha, &p).unwrap(),
        ] {
            prop_assert_eq!(v.value, 0.0);
        }
    }

    #[test]
    fn sharma_mittal_limits(fam in family(), s1 in shape(), s2 in shape(), alpha in 0.05f64..3.0) {
        prop_assume!((alpha - 1.0).abs() > 0.05);
        let p = policy();
        let m = alpha * s1 + (1.0 - alpha) * s2;
        prop_assume!(m > 1.1);
        let ren = renyi(fam, s1, s2, alpha, &p).unwrap().value;
        let h = 1e-6;
        let lo = sharma_mittal(fam, s1, s2, SharmaMittalSpec::new(alpha, 1.0 - h).unwrap(), &p).unwrap().value;
        let hi = sharma_mittal(fam, s1, s2, SharmaMittalSpec::new(alpha, 1.0 + h).unwrap(), &p).unwrap().value;
        prop_assert!((0.5 * (lo + hi) - ren).abs() <= 1e-8 * ren.max(1.0), "{} vs {}", 0.5 * (lo + hi), ren);
        let tsa = tsallis(fam, s1, s2, alpha, &p).unwrap().value;
        let sm = sharma_mittal(fam, s1, s2, SharmaMittalSpec::new(alpha, alpha).unwrap(), &p).unwrap().value;
        prop_assert!((sm - tsa).abs() <= 1e-12 * tsa.max(1.0));
    }

    #[test]
    fn kl_methods_agree(s1 in 2.0f64..15.0, s2 in 1.2f64..15.0, k0 in 1u64..4) {
        let fam = if k0 == 1 { Family::Zeta } else { Family::Generalized { k0 } };
        let p = policy();
        let base = kl_divergence(fam, s1, s2, KlMethod::LogSeries, &p).unwrap().value;
        for m in [KlMethod::EntropyForm, KlMethod::FenchelYoung] {
            let v = kl_divergence(fam, s1, s2, m, &p).unwrap().value;
            prop_assert!((v - base).abs() <= 1e-9, "{}: {} vs {}", m.as_str(), v, base);
        }
    }
}

#[test]
fn epsilon_ladder_converges_to_kl() {
    let p = policy();
    let ladder = [0.99, 0.999, 0.9999, 0.99999, 0.999999];
    let kl = kl_divergence(Family::Zeta, 4.0, 12.0, KlMethod::LogSeries, &p).unwrap().value;
    let mut prev = 0.0;
    for w in ladder {
        let v = kl_divergence(Family::Zeta, 4.0, 12.0, KlMethod::EpsilonApprox(w), &p).unwrap().value;
        assert!(v > prev && v < kl, "w={w}: {v}");
        prev = v;
    }
    for (s1, s2) in [(4.0, 12.0), (2.0, 3.0), (12.0, 1.5), (1.5, 7.0)] {
        for fam in [Family::Zeta, Family::Pareto, Family::Generalized { k0: 2 }] {
            let kl = kl_divergence(fam, s1, s2, KlMethod::LogSeries, &p).unwrap().value;
            let mut gap = f64::INFINITY;
            for w in ladder {
                let v = kl_divergence(fam, s1, s2, KlMethod::EpsilonApprox(w), &p).unwrap().value;
                let g = (v - kl).abs();
                assert!(g < gap, "{fam} ({s1},{s2}) w={w}: gap {g:e}");
                gap = g;
            }
            assert!(gap / kl < 1e-3, "{fam} ({s1},{s2}): {gap:e}");
        }
    }
}

#[test]
fn exact_mode_matches_float_path() {
    let alphas = [0.5, 0.25, 0.75, 0.125, 0.375, 0.0625];
    let mut checked = 0;
    for s1 in (2..=20).step_by(2) {
        for s2 in (2..=20).step_by(2) {
            if s1 == s2 {
                continue;
            }
            for alpha in alphas {
                let m = alpha * s1 as f64 + (1.0 - alpha) * s2 as f64;
                let r = alpha_divergence(Family::Zeta, s1 as f64, s2 as f64, alpha, &policy()).unwrap();
                if m.fract() != 0.0 || m as u32 % 2 != 0 {
                    assert!(r.exact.is_none());
                    continue;
                }
                let e = r.exact.as_ref().expect("even shapes with an even mixture have an exact form");
                assert!((e.to_f64() - r.value).abs() <= 1e-12, "({s1},{s2},{alpha}): {e}");
                assert_eq!(ExactAlphaDivergence::try_new(s1 as f64, s2 as f64, alpha).unwrap().as_ref(), Some(e));
                checked += 1;
            }
        }
    }
    assert!(checked >= 40, "{checked}");
    assert!(hellinger_squared(Family::Zeta, 3.0, 7.0, &policy()).unwrap().exact.is_none());
    assert!(alpha_divergence(Family::Zeta, 4.0, 12.0, 0.3, &policy()).unwrap().exact.is_none());
}
