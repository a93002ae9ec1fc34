use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Group, PopulationState};

/// A single violated range constraint on [`crate::model::ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamViolation {
    /// `s_m1`, `s_m2` must lie in (0, 1); `s_b` in (0, 1].
    StatusOutOfRange { name: &'static str, value: f64 },
    LambdaNotPositive(f64),
    AlphaBelowOne(f64),
    BetaBelowOne(f64),
    NotFinite(&'static str),
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParamViolation::StatusOutOfRange { name, value } => {
                let range = if name == "s_b" { "(0,1]" } else { "(0,1)" };
                write!(f, "{name} must lie in {range}, got {value}")
            }
            ParamViolation::LambdaNotPositive(v) => write!(f, "lambda must be positive, got {v}"),
            ParamViolation::AlphaBelowOne(v) => write!(f, "alpha below 1 ({v})"),
            ParamViolation::BetaBelowOne(v) => write!(f, "beta below 1 ({v})"),
            ParamViolation::NotFinite(name) => write!(f, "{name} is not a finite number"),
        }
    }
}

/// Partial result of an integration that stopped because the step size
/// collapsed.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationFailure {
    /// Time reached before the failure.
    pub t: f64,
    /// Step size that triggered the failure.
    pub step: f64,
    pub times: Vec<f64>,
    pub states: Vec<PopulationState>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    CompetencyOutOfRange { value: f64 },
    StatusOutOfRange { name: &'static str, value: f64 },
    StatusSumAboveOne { sum: f64 },
    /// Both mutualities are zero, so the pair shares no vocabulary.
    NoCommunication,
    InvalidParams(Vec<ParamViolation>),
    UnsupportedTransition { from: Group, to: Group },
    OffSimplex { m1: f64, m2: f64, b: f64 },
    /// Reduced coordinates outside `m1, m2 >= 0, m1 + m2 <= 1`.
    OutsideReducedDomain { m1: f64, m2: f64 },
    /// `alpha - beta == 1`: the exponent `1/(1 + beta - alpha)` is undefined.
    DegenerateDelta { alpha: f64, beta: f64 },
    /// The requested operation needs `delta > 0`, i.e. `alpha - beta < 1`.
    DeltaNotPositive { delta: f64 },
    NonPositiveInitialCondition,
    InvalidOptions(&'static str),
    Integration(Box<IntegrationFailure>),
    NoThreshold { s_b: f64 },
    InvalidGrid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompetencyOutOfRange { value } => {
                write!(f, "competency must lie in [0,1], got {value}")
            }
            Error::StatusOutOfRange { name, value } => {
                write!(f, "status {name} must lie in (0,1), got {value}")
            }
            Error::StatusSumAboveOne { sum } => {
                write!(f, "monolingual statuses sum to {sum}, above 1")
            }
            Error::NoCommunication => {
                f.write_str("no communication possible: both mutualities are zero")
            }
            Error::InvalidParams(violations) => {
                f.write_str("invalid parameters: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Error::UnsupportedTransition { from, to } => {
                write!(f, "unsupported transition {from} -> {to}: monolingual groups only exchange speakers through B")
            }
            Error::OffSimplex { m1, m2, b } => {
                write!(f, "state ({m1}, {m2}, {b}) is not on the simplex")
            }
            Error::OutsideReducedDomain { m1, m2 } => {
                write!(f, "reduced state ({m1}, {m2}) outside m1, m2 >= 0, m1 + m2 <= 1")
            }
            Error::DegenerateDelta { alpha, beta } => {
                write!(f, "alpha - beta = 1 (alpha = {alpha}, beta = {beta}): delta exponent undefined")
            }
            Error::DeltaNotPositive { delta } => {
                write!(f, "operation requires alpha - beta < 1, delta = {delta}")
            }
            Error::NonPositiveInitialCondition => {
                f.write_str("initial condition must be strictly positive in every group")
            }
            Error::InvalidOptions(msg) => write!(f, "invalid integrator options: {msg}"),
            Error::Integration(fail) => write!(
                f,
                "step size underflow at t = {} (h = {:e}) after {} accepted points",
                fail.t,
                fail.step,
                fail.times.len()
            ),
            Error::NoThreshold { s_b } => {
                write!(f, "no stability change of E7 found in the scanned alpha - beta range (s_b = {s_b})")
            }
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
