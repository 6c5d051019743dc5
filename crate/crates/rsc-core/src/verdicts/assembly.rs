//! Three-valued assembly of the general compactness criterion from separately obtained
//! pieces of evidence.

use alloc::vec;
use alloc::vec::Vec;

use super::{Branch, CondId, Geometry, Provenance, TraceEntry, Verdict, VerdictError};

/// Kleene three-valued truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn as_option(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }

    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// A truth value together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub value: Tri,
    pub source: Provenance,
}

impl Slot {
    pub fn certified(b: bool) -> Self {
        Slot { value: b.into(), source: Provenance::Certified }
    }

    pub fn numeric(value: Tri) -> Self {
        Slot { value, source: Provenance::NumericSuggested }
    }

    pub fn unknown() -> Self {
        Slot { value: Tri::Unknown, source: Provenance::Unknown }
    }

    fn provenance(&self) -> Provenance {
        if self.value == Tri::Unknown {
            Provenance::Unknown
        } else {
            self.source
        }
    }
}

/// Inputs of the general criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Evidence {
    /// The tail supremum vanishes as `a → ∞`.
    pub globally_ac: Slot,
    /// `φ_Y(0+) = 0`.
    pub fund_y_zero: Slot,
    /// The local condition of the applicable branch: the Hardy-type limit of the target norm
    /// (when `φ_Y(0+) = 0`) or of the plain integral (otherwise) for `m < n`, and
    /// `lim_{t→0+} t/φ_X(t) = 0` for `m = n`. Ignored where the branch makes it trivial.
    pub local: Slot,
}

/// Combines the evidence with the exact boolean structure of the criterion; the provenance is
/// the weakest among the inputs that determined the outcome.
pub fn decide_general_assembly(m: u32, n: u32, geometry: &Geometry, ev: &Evidence) -> Result<Verdict, VerdictError> {
    if m < 1 || n < 2 {
        return Err(VerdictError::InvalidQuery("need m >= 1 and n >= 2"));
    }
    if *geometry != Geometry::EntireSpace {
        return Err(VerdictError::InvalidQuery("the general criterion is stated for the entire space"));
    }
    let branch = Branch::of(m, n);
    let global = ev.globally_ac.value;
    let zero = ev.fund_y_zero.value;
    let local = ev.local.value;
    let mut trace = vec![
        TraceEntry { id: CondId::GlobalAc, holds: global.as_option() },
        TraceEntry { id: CondId::FundYZero, holds: zero.as_option() },
    ];
    // Local verdicts on the two sides of the φ_Y(0+) dichotomy.
    let (if_zero, if_positive, local_used_zero, local_used_positive) = match branch {
        Branch::MLessN => {
            trace.push(TraceEntry { id: CondId::A1, holds: zero.and(local).as_option() });
            trace.push(TraceEntry { id: CondId::B1, holds: zero.not().and(local).as_option() });
            (local, local, true, true)
        }
        Branch::MEqualN => {
            trace.push(TraceEntry { id: CondId::A2, holds: Some(true) });
            trace.push(TraceEntry { id: CondId::B2, holds: zero.not().and(local).as_option() });
            (Tri::True, local, false, true)
        }
        Branch::MGreaterN => {
            trace.push(TraceEntry { id: CondId::A2, holds: Some(true) });
            trace.push(TraceEntry { id: CondId::B3, holds: Some(true) });
            (Tri::True, Tri::True, false, false)
        }
    };
    let local_ok = zero.and(if_zero).or(zero.not().and(if_positive));
    let compact = global.and(local_ok);

    let uses_local = match zero {
        Tri::True => local_used_zero,
        Tri::False => local_used_positive,
        Tri::Unknown => local_used_zero || local_used_positive,
    };
    let mut used: Vec<Slot> = Vec::new();
    match compact {
        Tri::False if global == Tri::False => used.push(ev.globally_ac),
        Tri::False => {
            used.push(ev.fund_y_zero);
            if uses_local {
                used.push(ev.local);
            }
        }
        _ => {
            used.push(ev.globally_ac);
            used.push(ev.fund_y_zero);
            if uses_local {
                used.push(ev.local);
            }
        }
    }
    let provenance = if compact == Tri::Unknown {
        Provenance::Unknown
    } else {
        used.iter().map(Slot::provenance).min().unwrap_or(Provenance::Certified)
    };
    Ok(Verdict { compact: compact.as_option(), branch, trace, notes: Vec::new(), provenance })
}
