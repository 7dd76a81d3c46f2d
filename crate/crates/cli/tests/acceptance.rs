//! Acceptance suite. Every criterion runs in sequence and prints one
//! PASS/FAIL line with its runtime; the test fails if any criterion does.
//!
//! Run with `cargo test -p gaussdist-cli --test acceptance -- --nocapture`
//! to see the report.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gaussdist::{
    central_moment, fit_report, ks_one_sample, ks_standardized_normal, ks_two_sample, kurtosis,
    log_gamma, pdf_1d, raw_moment, relative_contrast_curve, simulate_gaussian_dataset,
    simulate_pairs, standardize, DistanceDistribution, Execution,
};
use gaussdist_testkit::{integrate, quadrature_moments};

const BIN: &str = env!("CARGO_BIN_EXE_gaussdist");
const OVERLAY: [u32; 11] = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 100];

type Outcome = Result<String, String>;

/// Name, runtime budget in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn law(k: f64) -> DistanceDistribution {
    DistanceDistribution::new(k).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gaussdist(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "gaussdist {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in OVERLAY {
        let d = law(k as f64);
        let hi = d.quantile(1.0 - 1e-12).unwrap();
        let mode = (2.0 * (k as f64 - 1.0)).sqrt();
        let pdf = |r: f64| d.pdf(r).unwrap();
        let total =
            integrate(pdf, 0.0, mode, 1e-15, 1e-14) + integrate(pdf, mode, hi, 1e-15, 1e-14);
        worst = worst.max((total - 1.0).abs());
    }
    check(worst < 1e-8, format!("max |integral - 1| = {worst:.2e}"))
}

fn one_dimension() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut identical = true;
    for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let want = (-x * x / 4.0f64).exp() / PI.sqrt();
        let got = law(1.0).pdf(x).unwrap();
        worst = worst.max(rel(got, want));
        identical &= got.to_bits() == pdf_1d(x).unwrap().to_bits();
    }
    check(
        worst <= 1e-15 && identical,
        format!("max rel err {worst:.2e}, pdf_1d identical: {identical}"),
    )
}

fn two_dimensions() -> Outcome {
    let d = law(2.0);
    let mut worst: f64 = 0.0;
    for i in 1..=1000 {
        let r = i as f64 / 100.0;
        let want = -(-r * r / 4.0f64).exp_m1();
        worst = worst.max(rel(d.cdf(r).unwrap(), want));
    }
    let median = 2.0 * 2f64.ln().sqrt();
    let q_err = (d.quantile(0.5).unwrap() - median).abs();
    check(
        worst <= 1e-13 && q_err <= 1e-10,
        format!("cdf max rel err {worst:.2e}, median err {q_err:.2e}"),
    )
}

fn moment_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in [1u32, 2, 3, 5, 10, 50] {
        let (raw, central) = quadrature_moments(k);
        let kf = k as f64;
        for n in 1..=4u32 {
            worst = worst.max(rel(raw_moment(kf, n).unwrap(), raw[n as usize - 1]));
        }
        for n in 2..=4u32 {
            worst = worst.max(rel(central_moment(kf, n).unwrap(), central[n as usize - 2]));
        }
    }
    let mut m2_worst: f64 = 0.0;
    let mut k = 1.0;
    while k <= 1e6 {
        m2_worst = m2_worst.max(rel(raw_moment(k, 2).unwrap(), 2.0 * k));
        k *= 1.1;
    }
    m2_worst = m2_worst.max(rel(raw_moment(1e6, 2).unwrap(), 2e6));
    check(
        worst < 1e-8 && m2_worst < 1e-12,
        format!("max rel err vs quadrature {worst:.2e}, m2 = 2k max rel err {m2_worst:.2e}"),
    )
}

fn monte_carlo() -> Outcome {
    const N: usize = 100_000;
    const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [1.0, 2.0, 8.0, 64.0] {
        let (mut one, mut two) = (0, 0);
        for seed in SEEDS {
            let direct = simulate_pairs(k, N, seed).unwrap();
            one += ks_one_sample(&direct, &law(k)).unwrap().passed as usize;
            let analytic = law(k).sample(N, seed).unwrap();
            two += ks_two_sample(&direct, &analytic).passed as usize;
        }
        ok &= one >= 4 && two >= 4;
        notes.push(format!("k={k}: {one}/5 one-sample, {two}/5 two-sample"));
    }
    check(ok, notes.join("; "))
}

fn large_k() -> Outcome {
    let mu2_1e4 = central_moment(1e4, 2).unwrap();
    let mut finite = true;
    let mut k = 2.0;
    while k <= 1e6 {
        let v = central_moment(k, 2).unwrap();
        finite &= v.is_finite() && v > 0.0;
        k *= 1.25;
    }
    let v6 = central_moment(1e6, 2).unwrap();
    finite &= v6.is_finite() && v6 > 0.0;
    let sample = law(400.0).sample(100_000, 42).unwrap();
    let ks = ks_standardized_normal(&sample, Execution::default()).unwrap();
    check(
        (mu2_1e4 - 1.0).abs() < 1e-3 && finite && ks.passed,
        format!(
            "|mu2(1e4) - 1| = {:.2e}, positive and finite to 1e6: {finite}, k=400 normality D = {:.5} (crit {:.5})",
            (mu2_1e4 - 1.0).abs(),
            ks.statistic,
            ks.critical_value_01
        ),
    )
}

fn kurtosis_adjudication() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=20u32 {
        let (_, c) = quadrature_moments(k);
        worst = worst.max(rel(kurtosis(k as f64).unwrap(), c[2] / (c[0] * c[0])));
    }
    let b400 = kurtosis(400.0).unwrap();
    // 4k(k+2) + (π·4^(3−k)(k−2)Γ(k)² − 48Γ((k+1)/2)⁴)/Γ(k/2)⁴ at k = 3.
    let k = 3.0f64;
    let g = |x: f64| log_gamma(x).unwrap().exp();
    let quoted = 4.0 * k * (k + 2.0)
        + (PI * 4f64.powf(3.0 - k) * (k - 2.0) * g(k).powi(2) - 48.0 * g((k + 1.0) / 2.0).powi(4))
            / g(k / 2.0).powi(4);
    let (_, c) = quadrature_moments(3);
    let is_mu4 = rel(quoted, c[2]) < 1e-10;
    let not_beta2 = rel(quoted, c[2] / (c[0] * c[0])) > 0.1;
    check(
        worst < 1e-8 && b400 > 2.95 && b400 < 3.05 && is_mu4 && not_beta2,
        format!(
            "max rel err {worst:.2e}, beta2(400) = {b400:.6}, quoted form at k=3 = {quoted:.6} (mu4 {:.6}, beta2 {:.6})",
            c[2],
            c[2] / (c[0] * c[0])
        ),
    )
}

fn effective_dimension() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for k in [5usize, 20, 100] {
        let mut mean = 0.0;
        for seed in [1u64, 2, 3, 4, 5] {
            let data = standardize(&simulate_gaussian_dataset(200, k, seed).unwrap()).unwrap();
            mean += fit_report(&data).unwrap().effective_dimension / 5.0;
        }
        ok &= (mean - k as f64).abs() <= 0.1 * k as f64;
        notes.push(format!("k={k}: {mean:.3}"));
    }
    check(ok, notes.join(", "))
}

fn relative_contrast() -> Outcome {
    let ks = [1usize, 10, 100, 1000];
    let mut means = [0.0; 4];
    for seed in 0..20u64 {
        for (m, row) in means
            .iter_mut()
            .zip(relative_contrast_curve(&ks, 100, seed).unwrap())
        {
            *m += row.contrast / 20.0;
        }
    }
    check(
        means.windows(2).all(|w| w[0] > w[1]),
        format!("mean contrast {means:.4?}"),
    )
}

fn read_columns(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let mut cols = vec![Vec::new(); header.len()];
    for line in lines {
        for (c, v) in cols.iter_mut().zip(line.split(',')) {
            c.push(v.parse::<f64>().unwrap());
        }
    }
    (header, cols)
}

fn figures() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fig4 = dir.path().join("fig4.csv");
    let fig2 = dir.path().join("fig2.csv");
    gaussdist(&[
        "plotdata",
        "--figure",
        "fig4",
        "--output",
        fig4.to_str().unwrap(),
    ])?;
    gaussdist(&[
        "plotdata",
        "--figure",
        "fig2",
        "--output",
        fig2.to_str().unwrap(),
    ])?;

    let (header, cols) = read_columns(&fig4);
    let series = header.len() - 1;
    let r = &cols[0];
    let mut worst: f64 = 0.0;
    for y in &cols[1..] {
        let area: f64 = (1..r.len())
            .map(|i| 0.5 * (r[i] - r[i - 1]) * (y[i] + y[i - 1]))
            .sum();
        worst = worst.max((area - 1.0).abs());
    }
    let (_, cols2) = read_columns(&fig2);
    let peak = cols2[1].iter().cloned().fold(f64::MIN, f64::max);
    let peak_err = (peak - 1.0 / PI.sqrt()).abs();
    check(
        series == 11
            && worst < 2e-3
            && peak_err < 1e-12
            && cols2[0][0] == 0.0
            && cols2[1][0] == peak,
        format!("fig4 series {series}, max |area - 1| {worst:.2e}; fig2 peak err {peak_err:.2e}"),
    )
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &[
            "sample", "--k", "7", "--n", "50000", "--seed", "11", "--method", "analytic",
        ],
        &[
            "sample", "--k", "7", "--n", "50000", "--seed", "11", "--method", "direct",
        ],
        &["contrast", "--seeds", "5"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "1", "4"] {
            let mut full = vec!["--threads", threads];
            full.extend_from_slice(args);
            outputs.push(gaussdist(&full)?);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!(
                "output of `{}` differs between runs",
                args.join(" ")
            ));
        }
    }
    Ok("sample (analytic, direct) and contrast byte-identical over 2 runs x threads {1, 4}".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("normalization", Some(5), normalization),
        ("k=1 golden case", None, one_dimension),
        ("k=2 closed forms", None, two_dimensions),
        ("moment suite", Some(10), moment_suite),
        ("Monte Carlo validation", Some(60), monte_carlo),
        ("large-k asymptotics", None, large_k),
        ("kurtosis adjudication", None, kurtosis_adjudication),
        ("effective dimension", Some(30), effective_dimension),
        ("relative contrast", Some(30), relative_contrast),
        ("figure reproduction", None, figures),
        ("determinism", None, determinism),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed < Duration::from_secs(s));
        let (passed, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        let budget = limit.map_or(String::new(), |s| format!(" / {s}s"));
        println!(
            "{} {:>2}. {name} [{:.2}s{budget}] {detail}",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
        if !passed {
            failures.push(*name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
