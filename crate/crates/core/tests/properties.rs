use gaussdist::{
    distance_pvalue, effective_dimension, gamma_ratio, ks_two_sample, log_gamma, moment_set,
    reg_gamma_p, reg_gamma_q, sample_moments, standardize, DatasetMatrix, DistanceDistribution,
    EmpiricalSample, FitReport, KsResult, MomentSet, SampleSource, Tail,
};
use proptest::prelude::*;

fn law(k: f64) -> DistanceDistribution {
    DistanceDistribution::new(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn incomplete_gamma_complements(a in 0.5f64..200.0, t in 0.0f64..4.0) {
        let x = t * a;
        let sum = reg_gamma_p(a, x).unwrap() + reg_gamma_q(a, x).unwrap();
        prop_assert!((sum - 1.0).abs() < 1e-14, "a={} x={} sum={}", a, x, sum);
    }

    #[test]
    fn upper_gamma_is_non_increasing(a in 0.05f64..300.0, x1 in 0.0f64..400.0, dx in 0.0f64..50.0) {
        prop_assert!(reg_gamma_q(a, x1).unwrap() >= reg_gamma_q(a, x1 + dx).unwrap());
    }

    #[test]
    fn gamma_ratio_matches_log_gamma(num in 0.1f64..150.0, den in 0.1f64..150.0) {
        let want = (log_gamma(num).unwrap() - log_gamma(den).unwrap()).exp();
        let got = gamma_ratio(num, den).unwrap();
        // The log-difference reference itself loses about |lnΓ|·ε.
        let slack = 1e-13 * (1.0 + log_gamma(num).unwrap().abs().max(log_gamma(den).unwrap().abs()));
        prop_assert!(((got - want) / want).abs() < slack, "{} {} {} {}", num, den, got, want);
    }

    #[test]
    fn cdf_is_monotone_and_complemented(k in 1.0f64..500.0, r in 0.0f64..60.0, dr in 0.0f64..5.0) {
        let d = law(k);
        let (f1, f2) = (d.cdf(r).unwrap(), d.cdf(r + dr).unwrap());
        prop_assert!((0.0..=1.0).contains(&f1) && f1 <= f2);
        prop_assert!((f1 + d.survival(r).unwrap() - 1.0).abs() < 1e-14);
        prop_assert!(d.pdf(r).unwrap() >= 0.0);
    }

    #[test]
    fn pvalues_complement(k in 1.0f64..1000.0, r in 0.0f64..80.0) {
        let d = law(k);
        let total = distance_pvalue(&d, r, Tail::Lower).unwrap() + distance_pvalue(&d, r, Tail::Upper).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quantile_inverts_cdf(k in 1.0f64..2000.0, p in 1e-9f64..0.999_999) {
        let d = law(k);
        let r = d.quantile(p).unwrap();
        let back = if p > 0.5 { 1.0 - d.survival(r).unwrap() } else { d.cdf(r).unwrap() };
        prop_assert!((back - p).abs() <= 1e-10 * p.min(1.0 - p).max(1e-3), "k={} p={} r={} back={}", k, p, r, back);
    }

    #[test]
    fn moment_set_is_consistent(k in 1.0f64..1e5) {
        let m = moment_set(k).unwrap();
        prop_assert!(m.raw.iter().all(|v| v.is_finite() && *v > 0.0));
        prop_assert!(m.central[0] > 0.0 && m.central[0] < 1.0);
        prop_assert!(((m.raw[1] - 2.0 * k) / (2.0 * k)).abs() < 1e-12);
        prop_assert!(m.skewness > 0.0 && m.kurtosis > 0.0);
        prop_assert!((effective_dimension(m.mean()).unwrap() - k).abs() < 1e-8 * k);
    }

    #[test]
    fn ecdf_is_a_step_function(values in prop::collection::vec(0.0f64..100.0, 1..200), r in 0.0f64..120.0) {
        let s = EmpiricalSample::new(values.clone(), 3.0, None, SampleSource::External).unwrap();
        prop_assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
        let f = s.ecdf(r);
        prop_assert!((0.0..=1.0).contains(&f));
        let below = values.iter().filter(|&&v| v <= r).count();
        prop_assert_eq!(f, below as f64 / values.len() as f64);
        prop_assert_eq!(s.ecdf(s.values()[s.len() - 1]), 1.0);
    }

    #[test]
    fn two_sample_statistic_is_bounded(
        a in prop::collection::vec(0.0f64..10.0, 1..100),
        b in prop::collection::vec(0.0f64..10.0, 1..100),
    ) {
        let sa = EmpiricalSample::new(a, 2.0, None, SampleSource::External).unwrap();
        let sb = EmpiricalSample::new(b, 2.0, None, SampleSource::External).unwrap();
        let r = ks_two_sample(&sa, &sb);
        prop_assert!((0.0..=1.0).contains(&r.statistic));
        prop_assert_eq!(r.passed, r.statistic < r.critical_value_01);
        prop_assert_eq!(ks_two_sample(&sa, &sa).statistic, 0.0);
        prop_assert_eq!(r.statistic, ks_two_sample(&sb, &sa).statistic);
    }

    #[test]
    fn standardize_is_idempotent(
        cols in 1usize..5,
        values in prop::collection::vec(-1e3f64..1e3, 40),
    ) {
        let rows = values.len() / cols;
        prop_assume!(rows >= 2);
        let m = DatasetMatrix::new(rows, cols, values[..rows * cols].to_vec()).unwrap();
        if let Ok(once) = standardize(&m) {
            let twice = standardize(&once).unwrap();
            for (x, y) in once.data().iter().zip(twice.data()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_sample_has_zero_spread(c in 0.0f64..50.0, n in 4usize..50) {
        let s = EmpiricalSample::new(vec![c; n], 1.0, None, SampleSource::External).unwrap();
        let m = sample_moments(&s).unwrap();
        prop_assert_eq!(m.raw[0], c);
        prop_assert_eq!(m.central[0], 0.0);
    }
}

#[test]
fn reports_round_trip_through_json() {
    let m = moment_set(7.5).unwrap();
    let back: MomentSet = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(m, back);

    let report = FitReport {
        k: 12,
        n_pairs: 4950,
        ks: KsResult {
            statistic: 0.0123,
            critical_value_01: 1.63 / 4950f64.sqrt(),
            n_effective: 4950.0,
            passed: true,
        },
        mean_observed: 4.81,
        mean_expected: 4.797_329_147_432_541,
        variance_observed: 1.02,
        variance_expected: 0.978_631_285_618_773_8,
        effective_dimension: 12.05,
        dependence_caveat: true,
    };
    let json = serde_json::to_value(&report).unwrap();
    for field in [
        "k",
        "n_pairs",
        "ks_statistic",
        "ks_critical_01",
        "ks_passed",
        "mean_observed",
        "mean_expected",
        "variance_observed",
        "variance_expected",
        "effective_dimension",
        "dependence_caveat",
    ] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    let back: FitReport = serde_json::from_value(json).unwrap();
    assert_eq!(report, back);

    let s = EmpiricalSample::new(
        vec![3.0, 1.0, 2.0],
        2.0,
        Some(9),
        SampleSource::AnalyticSampler,
    )
    .unwrap();
    let back: EmpiricalSample = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(s, back);
}
