//! Explicit radial test functions behind the compactness criteria, reduced to profiles in the
//! measure coordinate, and numerical checks of the inequalities they are built to satisfy.

mod ball;
mod bounds;
mod cutoff;
mod entire;
mod sample;

use crate::extremal::ExtremalError;
use crate::rational::Q;
use crate::spaces::SpaceError;
use crate::stepfn::{IntervalDomain, PiecewiseFn, StepFnError};
use crate::transforms::{Enclosure, EnvelopeOptions, TransformError};

pub use ball::{build_u_fra, BallProfile};
pub use bounds::{
    dilation_ratio, verify_construction_bounds, ConstructionFamily, ConstructionKind, ConstructionReport,
    ConstructionRow,
};
pub use cutoff::CutoffSpec;
pub use entire::{build_u_fa, EntireProfile};
pub use sample::{
    tail_envelope, verify_radial_lemma, verify_tail_estimate, RadialLemmaReport, RadialSample, TailEstimateReport,
    TailRow,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("bad input: {0}")]
    BadInput(&'static str),
    #[error("profile is not weakly differentiable: {0}")]
    NonSmoothProfile(&'static str),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    StepFn(#[from] StepFnError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

/// A constructed radial function, seen through its profile in the measure coordinate:
/// `t = ω_n|x|^n` on the entire space, `t = (|x|/R)^n` on the ball.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile {
    Entire(EntireProfile),
    Ball(BallProfile),
}

impl RadialProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RadialProfile::Entire(p) => p.eval(t),
            RadialProfile::Ball(p) => p.eval(t),
        }
    }

    pub fn domain(&self) -> IntervalDomain {
        match self {
            RadialProfile::Entire(_) => IntervalDomain::HalfLine,
            RadialProfile::Ball(_) => IntervalDomain::UnitInterval,
        }
    }

    /// End of the support in the measure coordinate.
    pub fn support_end(&self) -> Q {
        match self {
            RadialProfile::Entire(p) => p.support_end(),
            RadialProfile::Ball(p) => p.support_measure().clone(),
        }
    }

    pub fn enclosure(&self, opts: EnvelopeOptions) -> Result<Enclosure, WitnessError> {
        match self {
            RadialProfile::Entire(p) => p.enclosure(opts),
            RadialProfile::Ball(p) => p.enclosure(&Q::from_integer(0.into()), opts),
        }
    }

    /// Lower and upper step functions bracketing the profile, with exact rational entries.
    pub fn export(&self, opts: EnvelopeOptions) -> Result<(PiecewiseFn, PiecewiseFn), WitnessError> {
        let enc = self.enclosure(opts)?;
        let domain = self.domain();
        Ok((to_piecewise(&enc.lower(), domain)?, to_piecewise(&enc.upper(), domain)?))
    }
}

impl From<EntireProfile> for RadialProfile {
    fn from(p: EntireProfile) -> Self {
        RadialProfile::Entire(p)
    }
}

impl From<BallProfile> for RadialProfile {
    fn from(p: BallProfile) -> Self {
        RadialProfile::Ball(p)
    }
}

fn to_piecewise(step: &crate::transforms::FloatStep, domain: IntervalDomain) -> Result<PiecewiseFn, WitnessError> {
    use crate::rational::from_f64;
    let conv = |x: f64| from_f64(x).ok_or(WitnessError::BadInput("non-finite enclosure entry"));
    let mut breaks = alloc::vec::Vec::new();
    let mut values = alloc::vec::Vec::new();
    let mut tail = Q::from_integer(0.into());
    for (&e, &v) in step.ends().iter().zip(step.values()) {
        if domain == IntervalDomain::UnitInterval && e >= 1.0 {
            tail = conv(v)?;
            break;
        }
        if breaks.last().is_some_and(|b: &Q| conv(e).map(|q| q <= *b).unwrap_or(false)) {
            continue;
        }
        breaks.push(conv(e)?);
        values.push(conv(v.max(0.0))?);
    }
    Ok(PiecewiseFn::new(domain, breaks, values, tail)?)
}
