//! Local suprema of the reduction operator near the origin.
//!
//! With `μ = m/n` and `k = n/(n+α)`, the two functionals are
//! `A(f) = ‖χ_(0,a)(t) ∫_{t^k}^1 f*(s) s^{μ−1} ds‖_Y` and `B(f) = ∫_0^a f*(s) s^{μ−1} ds`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::math::powf;
use crate::rational::{to_f64, Q};
use crate::spaces::{CellNorm, LZSpace, NormKernel};
use crate::stepfn::{IntervalDomain, PiecewiseFn};
use crate::transforms::CopsonParams;

use super::candidates::{CandidateFamily, Objective, Profile};
use super::ExtremalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HardyForm {
    /// Target norm of the truncated operator output.
    A1,
    /// Plain integral near the origin (target locally `L^∞`).
    B1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyEstimate {
    pub a: f64,
    pub estimate: f64,
    /// Upper bound from `f* ≤ ‖f‖_X/φ_X`, available when `X` carries no logarithms.
    pub certificate: Option<f64>,
    pub family: &'static str,
    pub best: PiecewiseFn,
}

/// Ratio of consecutive sample points of the operator output below `a`.
const SAMPLE_RATIO: f64 = 1.05;
/// Sampling stops at `a·MIN_RELATIVE`; the last cell reaches down to 0.
const MIN_RELATIVE: f64 = 1e-14;

/// `∫_x^y s^{μ−1} ds` for `0 ≤ x ≤ y`.
fn power_mass(mu: f64, x: f64, y: f64) -> f64 {
    if y <= x {
        return 0.0;
    }
    (powf(y, mu) - powf(x, mu)) / mu
}

struct HardyObjective {
    kx: NormKernel,
    form: HardyForm,
    a: f64,
    mu: f64,
    /// Lower limits `t_j^k` for the sample points `t_0 = a > t_1 > … > t_J`.
    lower_limits: Vec<f64>,
    /// Cells `(t_{j+1}, t_j)` in increasing order, the first one starting at 0.
    y_cells: CellNorm,
}

impl HardyObjective {
    fn new(x: &LZSpace, y: &LZSpace, a: f64, params: &CopsonParams, form: HardyForm) -> Self {
        let k = to_f64(&params.lower_limit_power());
        let mut ts = vec![a];
        while *ts.last().expect("nonempty") > a * MIN_RELATIVE {
            let t = ts.last().expect("nonempty") / SAMPLE_RATIO;
            ts.push(t);
        }
        let lower_limits = ts.iter().map(|&t| powf(t, k)).collect();
        let mut cells = Vec::with_capacity(ts.len());
        cells.push((0.0, *ts.last().expect("nonempty")));
        for w in ts.windows(2).rev() {
            cells.push((w[1], w[0]));
        }
        let y_cells = CellNorm::new(&NormKernel::new(y), &cells);
        HardyObjective { kx: NormKernel::new(x), form, a, mu: to_f64(&params.mu()), lower_limits, y_cells }
    }

    /// Minorant heights of `χ_(0,a)G` on the Y cells, given `G` at each lower limit.
    fn y_norm(&self, g_at: impl Fn(f64) -> f64) -> f64 {
        // Cell (t_{j+1}, t_j) gets G(t_j); the cell (0, t_J) gets G(t_J).
        let mut h: Vec<f64> = Vec::with_capacity(self.lower_limits.len());
        let n = self.lower_limits.len();
        h.push(g_at(self.lower_limits[n - 1]));
        for j in (0..n - 1).rev() {
            h.push(g_at(self.lower_limits[j]));
        }
        self.y_cells.norm(&h)
    }
}

impl Objective for HardyObjective {
    fn score(&self, p: &Profile) -> f64 {
        let nx = self.kx.norm_pieces(&p.pieces());
        if !(nx > 0.0) {
            return 0.0;
        }
        let pieces = p.pieces();
        let value = match self.form {
            HardyForm::B1 => pieces.iter().map(|&(s, e, h)| h * power_mass(self.mu, s, e.min(self.a))).sum(),
            HardyForm::A1 => self.y_norm(|u| pieces.iter().map(|&(s, e, h)| h * power_mass(self.mu, s.max(u), e.min(1.0))).sum()),
        };
        value / nx
    }

    fn cell_scorer<'a>(&'a self, ends: &[f64]) -> Box<dyn Fn(&[f64]) -> f64 + 'a> {
        let mut cells = Vec::with_capacity(ends.len());
        let mut prev = 0.0;
        for &e in ends {
            cells.push((prev, e));
            prev = e;
        }
        let nx = CellNorm::new(&self.kx, &cells);
        match self.form {
            HardyForm::B1 => {
                let w: Vec<f64> = cells.iter().map(|&(s, e)| power_mass(self.mu, s, e.min(self.a))).collect();
                Box::new(move |h: &[f64]| {
                    let d = nx.norm(h);
                    if !(d > 0.0) {
                        return 0.0;
                    }
                    h.iter().zip(&w).map(|(h, w)| h * w).sum::<f64>() / d
                })
            }
            HardyForm::A1 => {
                // G at every lower limit is linear in the heights.
                let rows: Vec<Vec<f64>> = self
                    .lower_limits
                    .iter()
                    .map(|&u| cells.iter().map(|&(s, e)| power_mass(self.mu, s.max(u), e.min(1.0))).collect())
                    .collect();
                Box::new(move |h: &[f64]| {
                    let d = nx.norm(h);
                    if !(d > 0.0) {
                        return 0.0;
                    }
                    let n = rows.len();
                    let dot = |r: &Vec<f64>| r.iter().zip(h).map(|(m, h)| m * h).sum::<f64>();
                    let mut g = Vec::with_capacity(n);
                    g.push(dot(&rows[n - 1]));
                    for j in (0..n - 1).rev() {
                        g.push(dot(&rows[j]));
                    }
                    self.y_cells.norm(&g) / d
                })
            }
        }
    }

    fn scale(&self) -> f64 {
        self.a
    }

    fn domain_end(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Candidate families adapted to `(0,1)`: truncations both below and above `a`.
fn local_families() -> Vec<CandidateFamily> {
    let multipliers = (-80..=40).map(|k| powf(10.0, k as f64 / 8.0)).collect();
    vec![
        CandidateFamily::FlatTruncations { multipliers },
        CandidateFamily::two_level_default(),
        CandidateFamily::LogGridSteps { pieces: 24, lo: -8.0, hi: 3.0, sweeps: 20, tol: 1e-4 },
    ]
}

/// `φ_X(t) = c·t^{1/p}` when `X` has no logarithms.
fn plain_fundamental(x: &LZSpace) -> Option<(f64, f64)> {
    if !(x.log().is_zero() && x.double_log().is_zero()) {
        return None;
    }
    let inv_p = to_f64(&x.p().recip_q());
    let c = match (x.p().finite(), x.q().finite()) {
        (Some(p), Some(q)) => powf(to_f64(&(p / q)), 1.0 / to_f64(q)),
        _ => 1.0,
    };
    Some((c, inv_p))
}

/// Upper bound from replacing `f*` by `1/φ_X`.
fn certificate(obj: &HardyObjective, x: &LZSpace) -> Option<f64> {
    let (c, inv_p) = plain_fundamental(x)?;
    let nu = obj.mu - inv_p;
    if !(nu > 0.0) {
        return None;
    }
    match obj.form {
        HardyForm::B1 => Some(powf(obj.a, nu) / (c * nu)),
        HardyForm::A1 => {
            // H(t) = ∫_{t^k}^1 s^{ν−1}/c ds is nonincreasing; on (t_{j+1}, t_j) use H(t_{j+1}).
            let h = |u: f64| (1.0 - powf(u, nu)) / (c * nu);
            let n = obj.lower_limits.len();
            let mut heights = Vec::with_capacity(n);
            heights.push(h(0.0));
            for j in (1..n).rev() {
                heights.push(h(obj.lower_limits[j]));
            }
            Some(obj.y_cells.norm(&heights))
        }
    }
}

/// Lower estimate of the local supremum at `a ∈ (0,1)` over unit-ball candidates of `X`.
pub fn sup_hardy_local(
    x: &LZSpace,
    y: &LZSpace,
    a: &Q,
    params: &CopsonParams,
    form: HardyForm,
) -> Result<HardyEstimate, ExtremalError> {
    if x.domain() != IntervalDomain::UnitInterval {
        return Err(ExtremalError::WrongDomain(IntervalDomain::UnitInterval));
    }
    if form == HardyForm::A1 && y.domain() != IntervalDomain::UnitInterval && !y.is_linf() {
        return Err(ExtremalError::WrongDomain(IntervalDomain::UnitInterval));
    }
    let af = to_f64(a);
    if !(af > 0.0 && af < 1.0) {
        return Err(ExtremalError::InvalidArgument("cut point must lie in (0,1)"));
    }
    let obj = HardyObjective::new(x, y, af, params, form);
    let mandatory = Profile::flat(af);
    let mut best = (obj.score(&mandatory), mandatory, "flat");
    for fam in local_families() {
        let (s, p) = fam.search(&obj);
        if s > best.0 {
            best = (s, p, fam.label());
        }
    }
    let certificate = certificate(&obj, x);
    Ok(HardyEstimate { a: af, estimate: best.0, certificate, family: best.2, best: best.1.to_exact(IntervalDomain::UnitInterval)? })
}
