//! Radial first-order Sobolev samples with piecewise-linear profiles, and the two
//! first-order checks: the pointwise radial lemma and the tail estimate.

use alloc::vec;
use alloc::vec::Vec;

use crate::extremal::{suptail, SearchOptions};
use crate::math::{integrate, powf, unit_ball_volume};
use crate::rational::{to_f64, Q};
use crate::spaces::{LZSpace, NormKernel};
use crate::stepfn::IntervalDomain;
use crate::transforms::{Enclosure, EnvelopeOptions};

use super::WitnessError;

/// `u(x) = φ(|x|)` with `φ` continuous, nonnegative and piecewise linear through `knots`
/// (radius, value), and zero beyond the last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSample {
    knots: Vec<(f64, f64)>,
}

impl RadialSample {
    /// Knots must have strictly increasing radii starting at `ρ ≥ 0`. The profile must be
    /// continuous: it ends at 0, and starts at 0 unless the first knot is the origin.
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self, WitnessError> {
        if knots.len() < 2 {
            return Err(WitnessError::BadInput("need at least two knots"));
        }
        if knots.iter().any(|k| !k.0.is_finite() || !k.1.is_finite() || k.1 < 0.0 || k.0 < 0.0) {
            return Err(WitnessError::BadInput("knots must be finite, nonnegative pairs"));
        }
        for w in knots.windows(2) {
            if w[1].0 == w[0].0 {
                return Err(WitnessError::NonSmoothProfile("repeated radius: the profile jumps"));
            }
            if w[1].0 < w[0].0 {
                return Err(WitnessError::BadInput("radii must increase"));
            }
        }
        if knots[knots.len() - 1].1 != 0.0 {
            return Err(WitnessError::NonSmoothProfile("profile must drop to 0 at the last knot"));
        }
        if knots[0].0 > 0.0 && knots[0].1 != 0.0 {
            return Err(WitnessError::NonSmoothProfile("profile must start at 0 away from the origin"));
        }
        Ok(RadialSample { knots })
    }

    /// The cone `h·(1 − |x|/r)_+`.
    pub fn cone(r: f64, h: f64) -> Result<Self, WitnessError> {
        Self::new(vec![(0.0, h), (r, 0.0)])
    }

    /// The tent `h·(1 − ||x| − c|/w)_+` around the sphere of radius `c ≥ w`.
    pub fn tent(c: f64, w: f64, h: f64) -> Result<Self, WitnessError> {
        if w <= 0.0 || c < w {
            return Err(WitnessError::BadInput("tent needs 0 < w <= c"));
        }
        Self::new(vec![(c - w, 0.0), (c, h), (c + w, 0.0)])
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    /// `u(λx)`.
    pub fn dilate(&self, lambda: f64) -> Result<Self, WitnessError> {
        if !(lambda > 0.0) {
            return Err(WitnessError::BadInput("dilation factor must be positive"));
        }
        Self::new(self.knots.iter().map(|&(r, v)| (r / lambda, v)).collect())
    }

    /// `λu`.
    pub fn scale(&self, lambda: f64) -> Result<Self, WitnessError> {
        Self::new(self.knots.iter().map(|&(r, v)| (r, lambda * v)).collect())
    }

    pub fn outer_radius(&self) -> f64 {
        self.knots[self.knots.len() - 1].0
    }

    pub fn value(&self, rho: f64) -> f64 {
        let i = self.knots.partition_point(|k| k.0 <= rho);
        if i == 0 || i == self.knots.len() {
            return 0.0;
        }
        let (r0, v0) = self.knots[i - 1];
        let (r1, v1) = self.knots[i];
        v0 + (v1 - v0) * (rho - r0) / (r1 - r0)
    }

    fn segments(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        self.knots.windows(2).map(|w| (w[0], w[1]))
    }

    /// `(‖u‖_{L^p(ℝⁿ)}, ‖∇u‖_{L^p(ℝⁿ)})` for finite `p ≥ 1`.
    pub fn lp_norms(&self, p: f64, n: u32) -> (f64, f64) {
        let area = n as f64 * unit_ball_volume(n);
        let nf = n as f64;
        let mut u = 0.0;
        let mut du = 0.0;
        for ((r0, v0), (r1, v1)) in self.segments() {
            let slope = (v1 - v0) / (r1 - r0);
            let q = integrate(
                |r| powf(v0 + slope * (r - r0), p) * powf(r, nf - 1.0),
                r0,
                r1,
                0.0,
                1e-12,
                400,
            );
            u += area * q.value;
            du += powf(slope.abs(), p) * unit_ball_volume(n) * (powf(r1, nf) - powf(r0, nf));
        }
        (powf(u, 1.0 / p), powf(du, 1.0 / p))
    }

    /// Bracket of `|u|` in the measure coordinate `t = ω_n|x|^n`, with the ball of radius
    /// `inner` cut out.
    pub fn enclosure_outside(&self, n: u32, inner: f64, opts: EnvelopeOptions) -> Result<Enclosure, WitnessError> {
        let omega = unit_ball_volume(n);
        let nf = n as f64;
        let to_t = |r: f64| omega * powf(r, nf);
        let to_r = |t: f64| powf(t / omega, 1.0 / nf);
        let cut = to_t(inner.max(0.0));
        let end = to_t(self.outer_radius());
        if cut >= end {
            return Ok(Enclosure::refine(&[0.0, 1.0], |_, _| (0.0, 0.0), opts)?);
        }
        let mut grid = vec![0.0, cut];
        grid.extend(self.knots.iter().map(|k| to_t(k.0)).filter(|&t| t > cut));
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let knots = &self.knots;
        let bounds = |t0: f64, t1: f64| {
            if t1 <= cut {
                return (0.0, 0.0);
            }
            let (r0, r1) = (to_r(t0), to_r(t1));
            let mut lo = self.value(r0).min(self.value(r1));
            let mut hi = self.value(r0).max(self.value(r1));
            for k in knots.iter().filter(|k| r0 < k.0 && k.0 < r1) {
                lo = lo.min(k.1);
                hi = hi.max(k.1);
            }
            (lo, hi)
        };
        Ok(Enclosure::refine(&grid, bounds, opts)?)
    }

    /// `(measure, |∇u|)` level sets, exact up to rounding.
    pub fn gradient_levels(&self, n: u32) -> Vec<(f64, f64)> {
        let omega = unit_ball_volume(n);
        let nf = n as f64;
        self.segments()
            .map(|((r0, v0), (r1, v1))| (omega * (powf(r1, nf) - powf(r0, nf)), ((v1 - v0) / (r1 - r0)).abs()))
            .collect()
    }

    /// `(‖u‖_X, ‖∇u‖_X)` with `‖u‖_X` bracketed.
    pub fn sobolev_parts(&self, x: &LZSpace, n: u32, opts: EnvelopeOptions) -> Result<((f64, f64), f64), WitnessError> {
        let kx = NormKernel::new(x);
        let u = self.enclosure_outside(n, 0.0, opts)?.norm_bracket(&kx);
        let du = kx.norm_levels(&self.gradient_levels(n));
        Ok((u, du))
    }
}

/// Outcome of the pointwise radial-lemma check.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLemmaReport {
    pub n: u32,
    pub p: f64,
    pub u_norm: f64,
    pub grad_norm: f64,
    /// `sup |u(x)| |x|^{(n−1)/p} / (‖u‖_p^{(p−1)/p} ‖∇u‖_p^{1/p})` over the sampled radii.
    pub constant: f64,
    /// Radius where the supremum was attained.
    pub worst_radius: f64,
    /// `(p/(nω_n))^{1/p}`, which the constant never exceeds for compactly supported radial
    /// functions (fundamental theorem of calculus plus Hölder).
    pub reference: f64,
    pub radii_checked: usize,
}

impl RadialLemmaReport {
    pub fn holds(&self) -> bool {
        self.constant <= self.reference * (1.0 + 1e-9)
    }
}

/// Evaluates the radial lemma for one sample on a grid of 256 radii per linear piece.
pub fn verify_radial_lemma(u: &RadialSample, p: f64, n: u32) -> Result<RadialLemmaReport, WitnessError> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(WitnessError::BadInput("p must be finite and at least 1"));
    }
    if n < 2 {
        return Err(WitnessError::BadInput("n must be at least 2"));
    }
    let (u_norm, grad_norm) = u.lp_norms(p, n);
    let reference = powf(p / (n as f64 * unit_ball_volume(n)), 1.0 / p);
    let denom = powf(u_norm, (p - 1.0) / p) * powf(grad_norm, 1.0 / p);
    let mut constant = 0.0;
    let mut worst_radius = 0.0;
    let mut count = 0;
    const PER_PIECE: usize = 256;
    for ((r0, _), (r1, _)) in u.segments() {
        for i in 0..=PER_PIECE {
            let r = r0 + (r1 - r0) * i as f64 / PER_PIECE as f64;
            count += 1;
            let v = u.value(r);
            if v == 0.0 || r == 0.0 {
                continue;
            }
            let ratio = v * powf(r, (n as f64 - 1.0) / p) / denom;
            if ratio > constant {
                constant = ratio;
                worst_radius = r;
            }
        }
    }
    Ok(RadialLemmaReport { n, p, u_norm, grad_norm, constant, worst_radius, reference, radii_checked: count })
}

/// One radius of the tail-estimate check.
#[derive(Debug, Clone, PartialEq)]
pub struct TailRow {
    pub radius: f64,
    /// `R^{n−1}`.
    pub cut: f64,
    /// Upper bracket of `‖u χ_{ℝⁿ∖B_R}‖_Y`.
    pub lhs: f64,
    /// The tail supremum at `R^{n−1}`: the certificate when one is available, else the
    /// numerical lower estimate.
    pub sup_tail: f64,
    pub certified: bool,
    /// Lower bracket of `‖u‖_X + ‖∇u‖_X`.
    pub sobolev_norm: f64,
    /// `lhs / (sup_tail · sobolev_norm)`, 0 when `lhs = 0`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimateReport {
    pub n: u32,
    pub rows: Vec<TailRow>,
    /// `6/(nω_n) + 12`.
    pub envelope: f64,
    pub max_ratio: f64,
    /// Largest ratio among rows with a certified tail supremum.
    pub max_certified_ratio: f64,
}

/// `6/(nω_n) + 12`.
pub fn tail_envelope(n: u32) -> f64 {
    6.0 / (n as f64 * unit_ball_volume(n)) + 12.0
}

/// Compares the tail of `u` outside `B_R` with the tail supremum at `R^{n−1}` times the
/// first-order Sobolev norm, for each `R` on the grid.
pub fn verify_tail_estimate(
    u: &RadialSample,
    x: &LZSpace,
    y: &LZSpace,
    n: u32,
    radii: &[Q],
    search: &SearchOptions,
    opts: EnvelopeOptions,
) -> Result<TailEstimateReport, WitnessError> {
    if n < 2 {
        return Err(WitnessError::BadInput("n must be at least 2"));
    }
    if x.domain() != IntervalDomain::HalfLine || y.domain() != IntervalDomain::HalfLine {
        return Err(WitnessError::BadInput("spaces must live on (0,inf)"));
    }
    let ((u_lo, _), du) = u.sobolev_parts(x, n, opts)?;
    let sobolev_norm = u_lo + du;
    let ky = NormKernel::new(y);
    let mut rows = Vec::with_capacity(radii.len());
    for r in radii {
        if *r <= Q::from_integer(0.into()) {
            return Err(WitnessError::BadInput("radii must be positive"));
        }
        let cut_q = num_traits::pow::pow(r.clone(), (n - 1) as usize);
        let radius = to_f64(r);
        let lhs = u.enclosure_outside(n, radius, opts)?.norm_bracket(&ky).1;
        let est = suptail(x, y, &cut_q, search)?;
        let (sup_tail, certified) = match est.certificate {
            Some(c) if c.is_finite() => (c, true),
            _ => (est.estimate, false),
        };
        let ratio = if lhs == 0.0 { 0.0 } else { lhs / (sup_tail * sobolev_norm) };
        rows.push(TailRow { radius, cut: to_f64(&cut_q), lhs, sup_tail, certified, sobolev_norm, ratio });
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let max_certified_ratio = rows.iter().filter(|r| r.certified).map(|r| r.ratio).fold(0.0, f64::max);
    Ok(TailEstimateReport { n, rows, envelope: tail_envelope(n), max_ratio, max_certified_ratio })
}
