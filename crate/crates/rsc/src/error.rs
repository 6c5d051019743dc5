//! Failure classes of a run and their exit codes.

use rsc_core::extremal::ExtremalError;
use rsc_core::spaces::{ParseSpaceError, SpaceError};
use rsc_core::stepfn::StepFnError;
use rsc_core::transforms::TransformError;
use rsc_core::verdicts::VerdictError;
use rsc_core::witness::WitnessError;

use crate::config::ConfigError;
use crate::formats::StepFnDecodeError;
use crate::grid::GridError;
use crate::matrix::MatrixError;

/// Exit codes. `NOT_COMPACT` is a mathematical outcome, not a failure.
pub mod exit {
    pub const OK: i32 = 0;
    /// A decision was requested but the inputs leave the answer open.
    pub const UNDETERMINED: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const NOT_COMPACT: i32 = 3;
    pub const RESOURCE_CAP: i32 = 4;
    pub const INVARIANT_FAILURE: i32 = 5;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource cap reached: {0}")]
    Resource(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => exit::INVALID_INPUT,
            CliError::Resource(_) => exit::RESOURCE_CAP,
            CliError::Invariant(_) => exit::INVARIANT_FAILURE,
        }
    }
}

fn from_transform(e: &TransformError) -> CliError {
    match e {
        TransformError::ResourceExhausted(_) => CliError::Resource(e.to_string()),
        _ => CliError::Invalid(e.to_string()),
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        from_transform(&e)
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match &e {
            WitnessError::Transform(t) | WitnessError::Extremal(ExtremalError::Transform(t)) => from_transform(t),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        match &e {
            ExtremalError::Transform(t) => from_transform(t),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Extremal(x) => x.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(
    ParseSpaceError,
    SpaceError,
    StepFnError,
    VerdictError,
    StepFnDecodeError,
    GridError,
    ConfigError,
    std::io::Error
);
