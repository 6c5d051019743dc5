//! Scalar helpers over `libm` and an adaptive Gauss–Kronrod integrator.

use alloc::vec::Vec;

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn ln1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `ℓ(t) = 1 + |log t|`.
#[inline]
pub fn ell(t: f64) -> f64 {
    1.0 + abs(ln(t))
}

/// `ℓℓ(t) = 1 + log ℓ(t)`.
#[inline]
pub fn ell_ell(t: f64) -> f64 {
    1.0 + ln(ell(t))
}

/// Volume of the unit ball in `R^n`, `π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: u32) -> f64 {
    // Γ(n/2 + 1) by the half-integer recurrence.
    let pi = core::f64::consts::PI;
    let mut gamma = if n % 2 == 0 { 1.0 } else { sqrt(pi) / 2.0 };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        gamma *= k as f64 / 2.0;
        k += 2;
    }
    powf(pi, n as f64 / 2.0) / gamma
}

/// `n!` as a float.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];

/// One 21-point Kronrod rule with its embedded 10-point Gauss rule.
/// Returns `(integral, error estimate)`.
fn qk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = 0.0;
    let mut kronrod = fc * WGK[10];
    let mut res_abs = abs(kronrod);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let y1 = f(center - x);
        let y2 = f(center + x);
        fv1[j] = y1;
        fv2[j] = y2;
        kronrod += WGK[j] * (y1 + y2);
        res_abs += WGK[j] * (abs(y1) + abs(y2));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (y1 + y2);
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * abs(fc - mean);
    for j in 0..10 {
        res_asc += WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean));
    }
    let result = kronrod * half;
    let res_abs = res_abs * abs(half);
    let res_asc = res_asc * abs(half);
    let mut err = abs((kronrod - gauss) * half);
    if res_asc != 0.0 && err != 0.0 {
        let scale = powf(200.0 * err / res_asc, 1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > err {
            err = min_err;
        }
    }
    (result, err)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

/// Globally adaptive Gauss–Kronrod integration of `f` over the finite interval `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the total estimate is below
/// `max(abs_tol, rel_tol·|value|)` or `max_intervals` is reached.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, error: 0.0, converged: true };
    }
    let (v, e) = qk21(&f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    let mut value = v;
    let mut error = e;
    while error > abs_tol.max(rel_tol * abs(value)) {
        if parts.len() >= max_intervals {
            return Quadrature { value, error, converged: false };
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, pv, pe) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            // Interval can no longer be split in binary64.
            parts.push((lo, hi, pv, 0.0));
            error -= pe;
            continue;
        }
        let (v1, e1) = qk21(&f, lo, mid);
        let (v2, e2) = qk21(&f, mid, hi);
        value += v1 + v2 - pv;
        error += e1 + e2 - pe;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    // Re-sum to shed accumulated rounding from the incremental updates.
    let value = parts.iter().map(|p| p.2).sum();
    let error = parts.iter().map(|p| p.3).sum();
    Quadrature { value, error, converged: true }
}

/// Golden-section maximisation of a unimodal function on `[a, b]`. Returns `(argmax, max)`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64) {
    let ratio = 0.618_033_988_749_894_8;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
