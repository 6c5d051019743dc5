//! Nonincreasing step profiles used as test functions, and the families that generate them.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::math::{exp, golden_max, ln, powf};
use crate::rational::{from_f64, Q};
use crate::stepfn::{IntervalDomain, PiecewiseFn, StepFnError};

/// Nonincreasing step function in binary64: `heights[i]` on `[ends[i-1], ends[i])`, with
/// `ends[-1] = 0`, and zero afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub ends: Vec<f64>,
    pub heights: Vec<f64>,
}

impl Profile {
    /// `χ_(0,t)`.
    pub fn flat(t: f64) -> Self {
        Profile { ends: vec![t], heights: vec![1.0] }
    }

    /// Heights are clamped to be nonincreasing (running minimum) and zero-width cells dropped.
    pub fn new(ends: Vec<f64>, heights: Vec<f64>) -> Self {
        let mut out_e = Vec::with_capacity(ends.len());
        let mut out_h = Vec::with_capacity(heights.len());
        let mut prev = 0.0;
        let mut cap = f64::INFINITY;
        for (e, h) in ends.into_iter().zip(heights) {
            if !(e > prev) {
                continue;
            }
            cap = cap.min(h.max(0.0));
            out_e.push(e);
            out_h.push(cap);
            prev = e;
        }
        Profile { ends: out_e, heights: out_h }
    }

    /// `(start, end, value)` per cell.
    pub fn pieces(&self) -> Vec<(f64, f64, f64)> {
        let mut prev = 0.0;
        self.ends
            .iter()
            .zip(&self.heights)
            .map(|(&e, &h)| {
                let p = (prev, e, h);
                prev = e;
                p
            })
            .collect()
    }

    /// Pieces of `(f χ_(a,∞))*`: the part beyond `a`, shifted to start at 0.
    pub fn tail_pieces(&self, a: f64) -> Vec<(f64, f64, f64)> {
        self.pieces()
            .into_iter()
            .filter(|p| p.1 > a)
            .map(|(s, e, v)| (s.max(a) - a, e - a, v))
            .collect()
    }

    pub fn support_end(&self) -> f64 {
        self.ends.last().copied().unwrap_or(0.0)
    }

    /// The same function with exact rational breakpoints and values.
    pub fn to_exact(&self, domain: IntervalDomain) -> Result<PiecewiseFn, StepFnError> {
        let conv = |x: f64| from_f64(x).ok_or(StepFnError::InvalidArgument("non-finite profile entry"));
        let mut breaks: Vec<Q> = Vec::with_capacity(self.ends.len());
        let mut values: Vec<Q> = Vec::with_capacity(self.ends.len());
        let mut tail = Q::from_integer(0.into());
        for (&e, &h) in self.ends.iter().zip(&self.heights) {
            if domain == IntervalDomain::UnitInterval && e >= 1.0 {
                tail = conv(h)?;
                break;
            }
            breaks.push(conv(e)?);
            values.push(conv(h)?);
        }
        PiecewiseFn::new(domain, breaks, values, tail)
    }
}

/// What a family is scored against: a ratio `F(f)/‖f‖_X` on nonincreasing profiles.
pub trait Objective {
    fn score(&self, p: &Profile) -> f64;

    /// Scorer for profiles on a fixed list of cell ends, taking only the heights.
    fn cell_scorer<'a>(&'a self, ends: &[f64]) -> Box<dyn Fn(&[f64]) -> f64 + 'a>;

    /// Natural length scale of the problem (the cut point `a`).
    fn scale(&self) -> f64;

    /// Right end of the domain, `None` for the half-line.
    fn domain_end(&self) -> Option<f64>;
}

/// Search space for the supremum.
#[derive(Debug, Clone, PartialEq)]
pub enum CandidateFamily {
    /// `χ_(0,T)` for `T = a·m` over the multipliers, refined by golden section in `log T`.
    FlatTruncations { multipliers: Vec<f64> },
    /// `χ_(0,s₁) + ρ χ_(s₁,s₂)` over a grid of `(ρ, s₁/a, s₂/a)`.
    TwoLevel { grid: Vec<(f64, f64, f64)> },
    /// `pieces` steps on a geometric grid from `a·10^lo` to `a·10^hi`, heights optimised by
    /// coordinate ascent (at most `sweeps` sweeps, stopping early below `tol` relative gain).
    LogGridSteps { pieces: usize, lo: f64, hi: f64, sweeps: usize, tol: f64 },
    /// Discretised `t^{−γ} ℓ(t)^{−δ}` for each `(γ, δ)`, on `[a·10^{−2}, end]` with ratio 1.25.
    /// `end` is absolute, so the same truncation is used for every `a`.
    PowerProfiles { exponents: Vec<(f64, f64)>, end: f64 },
}

impl CandidateFamily {
    pub fn flat_default() -> Self {
        let multipliers = (-40..=80).map(|k| 1.0 + powf(10.0, k as f64 / 8.0)).collect();
        CandidateFamily::FlatTruncations { multipliers }
    }

    pub fn two_level_default() -> Self {
        let mut grid = Vec::new();
        for rho in [0.05, 0.2, 0.5, 0.8] {
            for s1 in [0.01, 0.1, 0.5, 1.0, 2.0] {
                for s2 in [1.5, 2.0, 4.0, 10.0, 100.0, 1e4] {
                    if s2 > s1 {
                        grid.push((rho, s1, s2));
                    }
                }
            }
        }
        CandidateFamily::TwoLevel { grid }
    }

    pub fn log_grid_default() -> Self {
        CandidateFamily::LogGridSteps { pieces: 24, lo: -3.0, hi: 8.0, sweeps: 20, tol: 1e-4 }
    }

    /// Flat, two-level and log-grid families. Power profiles depend on the spaces and are
    /// added by the callers that know them.
    pub fn standard() -> Vec<Self> {
        vec![Self::flat_default(), Self::two_level_default(), Self::log_grid_default()]
    }

    pub fn label(&self) -> &'static str {
        match self {
            CandidateFamily::FlatTruncations { .. } => "flat",
            CandidateFamily::TwoLevel { .. } => "two-level",
            CandidateFamily::LogGridSteps { .. } => "log-grid",
            CandidateFamily::PowerProfiles { .. } => "power",
        }
    }

    /// Best `(score, profile)` of the family.
    pub fn search(&self, obj: &dyn Objective) -> (f64, Profile) {
        let a = obj.scale();
        let clip = |t: f64| obj.domain_end().map_or(t, |e| t.min(e));
        let mut best = (f64::NEG_INFINITY, Profile::flat(clip(2.0 * a)));
        let consider = |p: Profile, best: &mut (f64, Profile)| {
            let s = obj.score(&p);
            if s > best.0 {
                *best = (s, p);
            }
        };
        match self {
            CandidateFamily::FlatTruncations { multipliers } => {
                let mut ts: Vec<f64> = multipliers.iter().map(|m| clip(a * m)).collect();
                ts.sort_by(f64::total_cmp);
                ts.dedup();
                let scores: Vec<f64> = ts.iter().map(|&t| obj.score(&Profile::flat(t))).collect();
                let (i, _) = scores.iter().enumerate().fold((0, f64::NEG_INFINITY), |b, (i, &s)| if s > b.1 { (i, s) } else { b });
                consider(Profile::flat(ts[i]), &mut best);
                if ts.len() > 2 {
                    let lo = ln(ts[i.saturating_sub(1)]);
                    let hi = ln(ts[(i + 1).min(ts.len() - 1)]);
                    if lo < hi {
                        let (x, _) = golden_max(|x| obj.score(&Profile::flat(exp(x))), lo, hi, 60);
                        consider(Profile::flat(exp(x)), &mut best);
                    }
                }
            }
            CandidateFamily::TwoLevel { grid } => {
                for &(rho, s1, s2) in grid {
                    let p = Profile::new(vec![clip(a * s1), clip(a * s2)], vec![1.0, rho]);
                    consider(p, &mut best);
                }
            }
            CandidateFamily::PowerProfiles { exponents, end } => {
                let start = a * 1e-2;
                let stop = clip(end.max(a * 1e3));
                let mut ends = Vec::new();
                let mut t = start;
                while t < stop {
                    ends.push(t);
                    t *= 1.25;
                }
                ends.push(stop);
                for &(gamma, delta) in exponents {
                    let heights = ends.iter().map(|&e| power_log_profile(e, gamma, delta)).collect();
                    consider(Profile::new(ends.clone(), heights), &mut best);
                }
            }
            CandidateFamily::LogGridSteps { pieces, lo, hi, sweeps, tol } => {
                let p = coordinate_ascent(obj, *pieces, *lo, *hi, *sweeps, *tol);
                consider(p, &mut best);
            }
        }
        best
    }
}

/// `t^{−γ} ℓ(t)^{−δ}`, computed in log form.
fn power_log_profile(t: f64, gamma: f64, delta: f64) -> f64 {
    exp(-gamma * ln(t) - delta * ln(1.0 + ln(t).abs()))
}

fn coordinate_ascent(obj: &dyn Objective, pieces: usize, lo: f64, hi: f64, sweeps: usize, tol: f64) -> Profile {
    let a = obj.scale();
    let end = obj.domain_end();
    let mut ends: Vec<f64> = (0..=pieces).map(|i| a * powf(10.0, lo + (hi - lo) * i as f64 / pieces as f64)).collect();
    if let Some(e) = end {
        ends.retain(|&t| t < e);
        ends.push(e);
    }
    if !ends.iter().any(|&t| t == a) {
        ends.push(a);
        ends.sort_by(f64::total_cmp);
    }
    let k = ends.len();
    let scorer = obj.cell_scorer(&ends);
    // Increments d_i = h_i − h_{i+1} ≥ 0 keep the heights nonincreasing.
    let heights_of = |d: &[f64]| {
        let mut h = vec![0.0; k];
        let mut acc = 0.0;
        for i in (0..k).rev() {
            acc += d[i];
            h[i] = acc;
        }
        h
    };
    // Start from the flat profile χ_(0, 2a) spread over the grid.
    let mut d = vec![0.0; k];
    let cut = ends.iter().position(|&t| t >= 2.0 * a).unwrap_or(k - 1);
    d[cut] = 1.0;
    for x in d.iter_mut() {
        *x += 1e-3;
    }
    let mut current = scorer(&heights_of(&d));
    for _ in 0..sweeps {
        let before = current;
        for j in 0..k {
            let base = d[j];
            let scale = base.max(1e-6);
            let eval = |x: f64, d: &mut Vec<f64>| {
                d[j] = x;
                scorer(&heights_of(d))
            };
            let mut trial = d.clone();
            let zero = eval(0.0, &mut trial);
            let (lx, lv) = golden_max(|u| eval(scale * exp(u), &mut trial.clone()), -7.0, 7.0, 40);
            let (x, v) = if zero >= lv { (0.0, zero) } else { (scale * exp(lx), lv) };
            if v > current {
                d[j] = x;
                current = v;
            } else {
                d[j] = base;
            }
        }
        if current - before <= tol * before.abs() {
            break;
        }
    }
    Profile::new(ends, heights_of(&d))
}
