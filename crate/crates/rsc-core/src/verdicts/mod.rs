//! Exact decision procedures for compactness of Sobolev embeddings between Lorentz–Zygmund
//! (and logarithmic Orlicz) spaces, plus the three-valued assembly of the general criterion.

mod assembly;
mod conditions;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Q;
use crate::spaces::LZSpace;
use crate::stepfn::IntervalDomain;

pub use assembly::{decide_general_assembly, Evidence, Slot, Tri};
pub use conditions::{
    ac_near_infinity_lz, decide, decide_ball_lz, decide_entire_lz, decide_entire_orlicz, optimal_target_ball_lz,
    OptimalSpaceDesc, OrliczParams,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerdictError {
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
}

/// Labels of the conditions a verdict can depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CondId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    D1,
    D2,
    D3,
    D4,
    D5,
    E1,
    E2,
    E3,
    E4,
    /// Source is not locally `L¹`: not `p = q = 1` with zero log exponent at 0.
    XNotL1,
    /// Target is not locally `L^∞`: not `r = s = ∞` with zero log exponent at 0.
    YNotLinf,
    /// The tail supremum vanishes as `a → ∞`.
    GlobalAc,
    /// `φ_Y(0+) = 0`.
    FundYZero,
    A1,
    A2,
    B1,
    B2,
    B3,
}

impl CondId {
    pub fn as_str(self) -> &'static str {
        use CondId::*;
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C5 => "C5",
            C6 => "C6",
            C7 => "C7",
            C8 => "C8",
            C9 => "C9",
            D1 => "D1",
            D2 => "D2",
            D3 => "D3",
            D4 => "D4",
            D5 => "D5",
            E1 => "E1",
            E2 => "E2",
            E3 => "E3",
            E4 => "E4",
            XNotL1 => "X-not-L1",
            YNotLinf => "Y-not-Linf",
            GlobalAc => "global-ac",
            FundYZero => "fund-Y-zero",
            A1 => "A1",
            A2 => "A2",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
        }
    }
}

impl fmt::Display for CondId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    MLessN,
    MEqualN,
    MGreaterN,
}

impl Branch {
    pub fn of(m: u32, n: u32) -> Self {
        match m.cmp(&n) {
            core::cmp::Ordering::Less => Branch::MLessN,
            core::cmp::Ordering::Equal => Branch::MEqualN,
            core::cmp::Ordering::Greater => Branch::MGreaterN,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::MLessN => "m<n",
            Branch::MEqualN => "m=n",
            Branch::MGreaterN => "m>n",
        }
    }
}

/// How much the verdict can be trusted, weakest last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Unknown,
    NumericSuggested,
    Certified,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Certified => "certified",
            Provenance::NumericSuggested => "numeric-suggested",
            Provenance::Unknown => "unknown",
        }
    }
}

/// One evaluated condition. `holds` is `None` when the evidence for it was unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub id: CondId,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// `None` when the inputs do not determine the answer.
    pub compact: Option<bool>,
    pub branch: Branch,
    pub trace: Vec<TraceEntry>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl Verdict {
    /// Whether `id` was evaluated and held.
    pub fn holds(&self, id: CondId) -> Option<bool> {
        self.trace.iter().find(|e| e.id == id).and_then(|e| e.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    EntireSpace,
    /// Ball of radius `r` with the measure `|x|^α dx`.
    Ball { r: Q, alpha: Q },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingQuery {
    pub m: u32,
    pub n: u32,
    pub geometry: Geometry,
    pub source: LZSpace,
    pub target: LZSpace,
}

impl EmbeddingQuery {
    pub fn entire(m: u32, n: u32, source: LZSpace, target: LZSpace) -> Self {
        EmbeddingQuery { m, n, geometry: Geometry::EntireSpace, source, target }
    }

    pub fn ball(m: u32, n: u32, r: Q, alpha: Q, source: LZSpace, target: LZSpace) -> Self {
        EmbeddingQuery { m, n, geometry: Geometry::Ball { r, alpha }, source, target }
    }

    /// Checks `m`, `n`, the geometry and that the spaces live where the geometry needs them.
    pub fn validate(&self) -> Result<(), VerdictError> {
        use num_traits::Signed;
        if self.m < 1 {
            return Err(VerdictError::InvalidQuery("m must be at least 1"));
        }
        if self.n < 2 {
            return Err(VerdictError::InvalidQuery("n must be at least 2"));
        }
        let want = match &self.geometry {
            Geometry::EntireSpace => IntervalDomain::HalfLine,
            Geometry::Ball { r, alpha } => {
                if !r.is_positive() {
                    return Err(VerdictError::InvalidQuery("ball radius must be positive"));
                }
                if alpha.is_negative() {
                    return Err(VerdictError::InvalidQuery("weight exponent must be nonnegative"));
                }
                IntervalDomain::UnitInterval
            }
        };
        if self.source.domain() != want || self.target.domain() != want {
            return Err(VerdictError::InvalidQuery(match want {
                IntervalDomain::HalfLine => "entire-space queries need spaces on (0,inf)",
                IntervalDomain::UnitInterval => "ball queries need spaces on (0,1)",
            }));
        }
        if !(self.source.double_log().is_zero() && self.target.double_log().is_zero()) {
            return Err(VerdictError::InvalidQuery("double-logarithmic spaces are outside the decided scale"));
        }
        Ok(())
    }
}
