use alloc::string::String;
use core::fmt;

/// Errors raised by the core evaluators and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter `t` fell outside the open interval of a family or profile.
    OutOfDomain { t: f64, t_min: f64, t_max: f64 },
    /// A jet quotient had a denominator below the machine floor.
    DivisionByZero,
    /// A profile evaluated to a non-positive or non-finite value where positivity is required.
    NonPositiveProfile { block: usize, t: f64, value: f64 },
    /// Unknown catalog name.
    UnknownFamily(String),
    /// A parameter failed validation; the message names it.
    InvalidParameter(String),
    /// Polyharmonic order must be at least 2.
    InvalidOrder(u32),
    /// The family contains sampled profiles and cannot be used for root classification.
    VerifyOnly,
    /// A polynomial check was requested on a family without an `x = cos²t` substitution.
    MissingSubstitution,
    /// A map supplies fewer derivatives than the computation needs.
    InsufficientJetOrder { needed: usize, available: usize },
    /// Exact integer arithmetic would exceed its supported range.
    Overflow,
    /// The ODE integrator could not make progress.
    StepSizeUnderflow { t: f64 },
    /// The functional vanishes on the whole scan grid: every orbit solves it,
    /// so there are no isolated roots to report.
    VanishesIdentically,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfDomain { t, t_min, t_max } => {
                write!(f, "t = {t} is outside the open domain ({t_min}, {t_max})")
            }
            Error::DivisionByZero => write!(f, "jet division by a value below 1e-300"),
            Error::NonPositiveProfile { block, t, value } => {
                write!(f, "profile of block {block} is not positive at t = {t} (value {value})")
            }
            Error::UnknownFamily(name) => write!(f, "unknown catalog family `{name}`"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidOrder(r) => write!(f, "polyharmonic order must be >= 2, got {r}"),
            Error::VerifyOnly => {
                write!(f, "family contains sampled profiles and is verify-only")
            }
            Error::MissingSubstitution => {
                write!(f, "family has no x = cos^2 t substitution")
            }
            Error::InsufficientJetOrder { needed, available } => {
                write!(f, "need derivatives through order {needed}, map provides {available}")
            }
            Error::Overflow => write!(f, "exact integer arithmetic overflow"),
            Error::StepSizeUnderflow { t } => write!(f, "ODE step size underflow at t = {t}"),
            Error::VanishesIdentically => {
                write!(f, "functional vanishes identically: every orbit is a solution")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
