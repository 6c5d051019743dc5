//! Lower estimates for the suprema that decide compactness, obtained by scoring explicit
//! nonincreasing candidates. Upper certificates come from [`tail_cut_bound`] where available.

mod candidates;
mod hardy;
mod probe;

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::rational::{to_f64, Q};
use crate::spaces::{CellNorm, LZSpace, NormKernel};
use crate::stepfn::{IntervalDomain, PiecewiseFn, StepFnError};
use crate::transforms::{tail_cut_bound, TransformError};

pub use candidates::{CandidateFamily, Objective, Profile};
pub use hardy::{sup_hardy_local, HardyEstimate, HardyForm};
pub use probe::{classify, geometric_grid, limit_probe, LimitClass, LimitDirection, ProbeResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("expected spaces on {0:?}")]
    WrongDomain(IntervalDomain),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    StepFn(#[from] StepFnError),
}

/// Which candidate families to try and whether to compute the upper certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub families: Vec<CandidateFamily>,
    pub certificate: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { families: CandidateFamily::standard(), certificate: true }
    }
}

impl SearchOptions {
    /// The standard families plus the power profiles suggested by `x`.
    pub fn for_space(x: &LZSpace) -> Self {
        let mut opts = Self::default();
        opts.families.push(power_profiles_for(x));
        opts
    }
}

/// `t^{−1/p} ℓ^{−δ}` profiles with `δ` between `α∞` and `α∞ + 1/q`, truncated at `10^150`.
pub fn power_profiles_for(x: &LZSpace) -> CandidateFamily {
    let gamma = to_f64(&x.p().recip_q());
    let alpha = to_f64(x.log().exponent_at(2.0));
    let inv_q = to_f64(&x.q().recip_q());
    let exponents = (0..=4).map(|j| (gamma, alpha + inv_q * j as f64 / 4.0)).collect();
    CandidateFamily::PowerProfiles { exponents, end: 1e150 }
}

/// Lower estimate of `sup_{‖f‖_X ≤ 1} ‖f*χ_(a,∞)‖_Y` at one cut point.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    pub a: f64,
    pub estimate: f64,
    /// Score of `χ_(0,2a)`, which every search includes.
    pub floor: f64,
    /// Upper bound from the tail-cut decomposition, when requested.
    pub certificate: Option<f64>,
    pub family: &'static str,
    pub best: PiecewiseFn,
}

struct TailObjective {
    kx: NormKernel,
    ky: NormKernel,
    a: f64,
}

impl Objective for TailObjective {
    fn score(&self, p: &Profile) -> f64 {
        let nx = self.kx.norm_pieces(&p.pieces());
        if !(nx > 0.0) {
            return 0.0;
        }
        self.ky.norm_pieces(&p.tail_pieces(self.a)) / nx
    }

    fn cell_scorer<'a>(&'a self, ends: &[f64]) -> Box<dyn Fn(&[f64]) -> f64 + 'a> {
        let mut cells = Vec::with_capacity(ends.len());
        let mut prev = 0.0;
        for &e in ends {
            cells.push((prev, e));
            prev = e;
        }
        let first = cells.iter().position(|c| c.1 > self.a).unwrap_or(cells.len());
        let shifted: Vec<(f64, f64)> = cells[first..].iter().map(|&(s, e)| (s.max(self.a) - self.a, e - self.a)).collect();
        let nx = CellNorm::new(&self.kx, &cells);
        let ny = CellNorm::new(&self.ky, &shifted);
        Box::new(move |h: &[f64]| {
            let d = nx.norm(h);
            if !(d > 0.0) {
                return 0.0;
            }
            ny.norm(&h[first..]) / d
        })
    }

    fn scale(&self) -> f64 {
        self.a
    }

    fn domain_end(&self) -> Option<f64> {
        None
    }
}

/// Best candidate score for the tail supremum at `a`.
pub fn suptail(x: &LZSpace, y: &LZSpace, a: &Q, opts: &SearchOptions) -> Result<TailEstimate, ExtremalError> {
    if x.domain() != IntervalDomain::HalfLine || y.domain() != IntervalDomain::HalfLine {
        return Err(ExtremalError::WrongDomain(IntervalDomain::HalfLine));
    }
    let af = to_f64(a);
    if !(af > 0.0) {
        return Err(ExtremalError::InvalidArgument("cut point must be positive"));
    }
    let obj = TailObjective { kx: NormKernel::new(x), ky: NormKernel::new(y), a: af };
    let mandatory = Profile::flat(2.0 * af);
    let floor = obj.score(&mandatory);
    let mut best = (floor, mandatory, "flat");
    for fam in &opts.families {
        let (s, p) = fam.search(&obj);
        if s > best.0 {
            best = (s, p, fam.label());
        }
    }
    let certificate = if opts.certificate { Some(tail_cut_bound(x, y, a)?.total) } else { None };
    Ok(TailEstimate {
        a: af,
        estimate: best.0,
        floor,
        certificate,
        family: best.2,
        best: best.1.to_exact(IntervalDomain::HalfLine)?,
    })
}

/// [`suptail`] over a grid of cut points, followed by [`monotone_envelope`].
pub fn sweep(x: &LZSpace, y: &LZSpace, grid: &[Q], opts: &SearchOptions) -> Result<Vec<TailEstimate>, ExtremalError> {
    let mut out = grid.iter().map(|a| suptail(x, y, a, opts)).collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|l, r| l.a.total_cmp(&r.a));
    monotone_envelope(&mut out);
    Ok(out)
}

/// The true supremum is nonincreasing in `a`, and an estimate at `a'` is also a lower bound at
/// every `a < a'`, so estimates (sorted by increasing `a`) are raised to the running maximum
/// taken from the right.
pub fn monotone_envelope(estimates: &mut [TailEstimate]) {
    let mut run = f64::NEG_INFINITY;
    for e in estimates.iter_mut().rev() {
        run = run.max(e.estimate);
        e.estimate = run;
    }
}
