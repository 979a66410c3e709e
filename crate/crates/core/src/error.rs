use thiserror::Error;

/// Errors produced by the solvers and the problem loader.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid exponent p = {0}: p > 1 required")]
    InvalidExponent(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("problem file: {0}")]
    ProblemFile(String),

    #[error("no bracket: {0}")]
    NoBracket(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("step failure at x = {x:.6e} (h = {h:.3e})")]
    StepFailure { x: f64, h: f64 },

    #[error("degenerate zero at x = {x:.12} (|u'| = {slope:.3e} < floor {floor:.3e})")]
    DegenerateZero { x: f64, slope: f64, floor: f64 },

    #[error("wrong nodal count: expected {expected} interior zeros, found {found}")]
    WrongNodalCount { expected: usize, found: usize },

    #[error("continuation stalled at s = {s:.6e} after {halvings} step halvings")]
    ContinuationStalled { s: f64, halvings: usize },

    #[error("no crossing of lambda = 1 for k = {k}, nu = {nu}")]
    NoCrossing { k: usize, nu: crate::Sign },

    #[error("u2 vanishes at x = {0:.12} inside the comparison interval")]
    U2Vanishes(f64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("ratio window violated: {0}")]
    WindowViolated(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("{} pair(s) failed: {}", .0.len(), .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Aggregate(Vec<Error>),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::InvalidExponent(_)
                | Error::InvalidInput(_)
                | Error::ProblemFile(_)
                | Error::HypothesisViolated(_)
                | Error::WindowViolated(_)
        )
    }

    /// Short machine-readable tag, used on the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidExponent(_) => "invalid_exponent",
            Error::InvalidInput(_) => "invalid_input",
            Error::ProblemFile(_) => "problem_file",
            Error::NoBracket(_) => "no_bracket",
            Error::NoRoot(_) => "no_root",
            Error::StepFailure { .. } => "step_failure",
            Error::DegenerateZero { .. } => "degenerate_zero",
            Error::WrongNodalCount { .. } => "wrong_nodal_count",
            Error::ContinuationStalled { .. } => "continuation_stalled",
            Error::NoCrossing { .. } => "no_crossing",
            Error::U2Vanishes(_) => "u2_vanishes",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::WindowViolated(_) => "window_violated",
            Error::Inconsistent(_) => "inconsistent",
            Error::Aggregate(_) => "aggregate",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
