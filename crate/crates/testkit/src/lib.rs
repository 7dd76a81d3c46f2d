//! Reference computations for the `gaussdist` test suites.
//!
//! Nothing in here calls into `gaussdist`. Every routine is a deliberately
//! plain implementation (adaptive quadrature, exact factorial products) so
//! that the library's special-function and closed-form paths are checked
//! against something that shares no code with them.

use std::f64::consts::PI;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// Bisects panels until each panel's Kronrod/Gauss gap is below its share
/// of `abs_tol` (or the relative tolerance `rel_tol` of the running total).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        err: f64,
        abs_tol: f64,
        rel_tol: f64,
        depth: u32,
    ) -> f64 {
        if depth == 0 || err <= abs_tol.max(rel_tol * whole.abs()) {
            return whole;
        }
        let mid = 0.5 * (a + b);
        let (left, el) = gk15(f, a, mid);
        let (right, er) = gk15(f, mid, b);
        recurse(f, a, mid, left, el, 0.5 * abs_tol, rel_tol, depth - 1)
            + recurse(f, mid, b, right, er, 0.5 * abs_tol, rel_tol, depth - 1)
    }
    let (whole, err) = gk15(&f, a, b);
    recurse(&f, a, b, whole, err, abs_tol, rel_tol, 40)
}

/// `ln Γ(k/2)` for a positive integer `k`, by exact recursion from
/// Γ(1) = 1 and Γ(1/2) = √π.
pub fn ln_gamma_half_integer(k: u32) -> f64 {
    assert!(k >= 1);
    // Γ(k/2) = Γ(start) · Π (start + j) for j = 0 .. steps-1
    let (start_ln, start, steps) = if k % 2 == 0 {
        (0.0, 1.0, k / 2 - 1)
    } else {
        (0.5 * PI.ln(), 0.5, (k - 1) / 2)
    };
    (0..steps).map(|j| (start + j as f64).ln()).sum::<f64>() + start_ln
}

/// The distance density written straight from its closed form:
/// `2^(1-k) e^(-r²/4) r^(k-1) / Γ(k/2)`.
pub fn distance_pdf(k: u32, r: f64) -> f64 {
    if r == 0.0 {
        return if k == 1 { 1.0 / PI.sqrt() } else { 0.0 };
    }
    let kf = k as f64;
    ((1.0 - kf) * 2f64.ln() - r * r / 4.0 + (kf - 1.0) * r.ln() - ln_gamma_half_integer(k)).exp()
}

/// Upper integration limit beyond which the k-dimensional density is
/// negligible (below 1e-100 relative to its peak).
pub fn distance_support_bound(k: u32) -> f64 {
    (2.0 * k as f64).sqrt() + 32.0
}

/// `∫₀^∞ g(r) f(r; k) dr` by quadrature, split at the mode so both panels
/// see a smooth, single-signed slope.
pub fn expect<G: Fn(f64) -> f64>(k: u32, g: G) -> f64 {
    let mode = (2.0 * (k as f64 - 1.0)).sqrt();
    let hi = distance_support_bound(k);
    let h = |r: f64| g(r) * distance_pdf(k, r);
    if mode > 0.0 {
        integrate(h, 0.0, mode, 1e-15, 1e-14) + integrate(h, mode, hi, 1e-15, 1e-14)
    } else {
        integrate(h, 0.0, hi, 1e-15, 1e-14)
    }
}

/// Quadrature moments of the distance law: `(raw[1..=4], [μ2, μ3, μ4])`.
pub fn quadrature_moments(k: u32) -> ([f64; 4], [f64; 3]) {
    let raw = [1, 2, 3, 4].map(|n| expect(k, |r| r.powi(n)));
    let mean = raw[0];
    let central = [2, 3, 4].map(|n| expect(k, |r| (r - mean).powi(n)));
    (raw, central)
}

/// Standard normal CDF by quadrature of the Gaussian density.
pub fn standard_normal_cdf(z: f64) -> f64 {
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    if z.abs() > 40.0 {
        return if z > 0.0 { 1.0 } else { 0.0 };
    }
    let half = integrate(phi, 0.0, z.abs(), 1e-16, 1e-14);
    if z >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// `∫₀^{π/2} sin^m θ dθ` by quadrature.
pub fn sine_power_integral(m: u32) -> f64 {
    integrate(|t: f64| t.sin().powi(m as i32), 0.0, 0.5 * PI, 1e-15, 1e-14)
}
