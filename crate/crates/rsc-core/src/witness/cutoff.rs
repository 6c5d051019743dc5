//! Polynomial smoothstep cutoffs with computed derivative bounds.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, powf};
use crate::rational::{q, to_f64, Q};

use super::WitnessError;

/// Largest order for which the integer smoothstep coefficients are computed exactly.
pub const MAX_ORDER: u32 = 12;

/// The smoothstep cutoff `η` of degree `2m+1`: 0 up to `r0`, 1 from `r1`, `C^m` in between.
///
/// `r0 = (a/8)^{1/n}` and `r1 = (a/4)^{1/n}` are radii in the variable `ω_n^{1/n}|x|`, so that
/// in the measure coordinate `t = ω_n|x|^n` the transition is `(a/8, a/4)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffSpec {
    pub m: u32,
    pub n: u32,
    /// `a/8`, exact.
    pub t0: Q,
    /// `a/4`, exact.
    pub t1: Q,
    pub r0: f64,
    pub r1: f64,
    /// Coefficients of `S(x)` on `[0,1]`, lowest degree first.
    coeffs: Vec<i128>,
    /// `sup |η^{(k)}|` for this cutoff, `k = 0..=m`.
    pub derivative_bounds: Vec<f64>,
    /// `sup |η^{(k)}|` valid for every `a ≥ 1` at this `n`, `k = 0..=m`.
    pub uniform_bounds: Vec<f64>,
}

fn binom_i(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `S_m(x) = x^{m+1} Σ_{k=0}^{m} C(m+k,k) C(2m+1,m−k) (−x)^k`.
fn smoothstep_coeffs(m: u32) -> Vec<i128> {
    let mut c = vec![0i128; (2 * m + 2) as usize];
    for k in 0..=m {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        c[(m + 1 + k) as usize] = sign * binom_i(m + k, k) * binom_i(2 * m + 1, m - k);
    }
    c
}

fn derive(c: &[i128]) -> Vec<i128> {
    c.iter().enumerate().skip(1).map(|(i, &v)| v * i as i128).collect()
}

fn horner(c: &[i128], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v as f64)
}

/// Upper bound for `sup_{[0,1]} |P|`: the maximum on a uniform grid plus half a grid step
/// times `Σ|coefficients of P'|`, which bounds `|P'|` on `[0,1]`.
fn sup_bound(c: &[i128]) -> f64 {
    const GRID: usize = 4096;
    let h = 1.0 / GRID as f64;
    let sampled = (0..=GRID).map(|i| abs(horner(c, i as f64 * h))).fold(0.0, f64::max);
    let lip: f64 = derive(c).iter().map(|&v| abs(v as f64)).sum();
    sampled + 0.5 * h * lip
}

impl CutoffSpec {
    pub fn new(a: &Q, m: u32, n: u32) -> Result<Self, WitnessError> {
        if m < 1 || m > MAX_ORDER {
            return Err(WitnessError::BadInput("order m must be between 1 and 12"));
        }
        if n < 2 {
            return Err(WitnessError::BadInput("dimension n must be at least 2"));
        }
        if *a < q(1, 1) {
            return Err(WitnessError::BadInput("a must be at least 1"));
        }
        let t0 = a / q(8, 1);
        let t1 = a / q(4, 1);
        let inv_n = 1.0 / n as f64;
        let r0 = powf(to_f64(&t0), inv_n);
        let r1 = powf(to_f64(&t1), inv_n);
        let coeffs = smoothstep_coeffs(m);
        let width = r1 - r0;
        let min_width = powf(0.25, inv_n) - powf(0.125, inv_n);
        let mut derivative_bounds = Vec::with_capacity(m as usize + 1);
        let mut uniform_bounds = Vec::with_capacity(m as usize + 1);
        let mut c = coeffs.clone();
        for k in 0..=m {
            let s = sup_bound(&c);
            derivative_bounds.push(s / powf(width, k as f64));
            uniform_bounds.push(s / powf(min_width, k as f64));
            c = derive(&c);
        }
        Ok(CutoffSpec { m, n, t0, t1, r0, r1, coeffs, derivative_bounds, uniform_bounds })
    }

    pub fn degree(&self) -> u32 {
        2 * self.m + 1
    }

    /// `η(r)`.
    pub fn eval(&self, r: f64) -> f64 {
        self.derivative(0, r)
    }

    /// `η^{(k)}(r)`.
    pub fn derivative(&self, k: u32, r: f64) -> f64 {
        if r <= self.r0 {
            return 0.0;
        }
        if r >= self.r1 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let width = self.r1 - self.r0;
        let mut c = self.coeffs.clone();
        for _ in 0..k {
            c = derive(&c);
        }
        horner(&c, (r - self.r0) / width) / powf(width, k as f64)
    }
}
