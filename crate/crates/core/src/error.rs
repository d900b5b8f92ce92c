use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos} near `{token}`: {message}")]
    Syntax {
        pos: usize,
        token: String,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("genericity error{}: {message}", at_time(*.t))]
    Genericity { message: String, t: Option<f64> },

    #[error("branch error{}: {message}", at_time(*.t))]
    Branch { message: String, t: Option<f64> },

    #[error("singular fraction: gamma*x + delta = 0")]
    SingularFraction,

    #[error("orbit exit: sqrt(-p_bar) + lambda5 = {0} <= 0")]
    OrbitExit(f64),

    #[error("group elements are not in a common distinguished subgroup")]
    MixedElement,

    #[error("trajectory left the guarded domain after t = {t_last_valid}")]
    GuardViolation { t_last_valid: f64 },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("step limit of {max_steps} exceeded at t = {t}")]
    TooManySteps { max_steps: usize, t: f64 },

    #[error("time {t} outside [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn at_time(t: Option<f64>) -> String {
    t.map(|t| format!(" at t = {t}")).unwrap_or_default()
}

/// Failure classes reported by the command-line tool as distinct exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Domain,
    Genericity,
    Numeric,
    Io,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Config => 2,
            ErrorClass::Domain => 3,
            ErrorClass::Genericity => 4,
            ErrorClass::Numeric => 5,
            ErrorClass::Io => 6,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } | Error::Config(_) | Error::Csv(_) => ErrorClass::Config,
            Error::Domain(_)
            | Error::SingularFraction
            | Error::OrbitExit(_)
            | Error::MixedElement
            | Error::GuardViolation { .. }
            | Error::OutOfRange { .. } => ErrorClass::Domain,
            Error::Genericity { .. } | Error::Branch { .. } => ErrorClass::Genericity,
            Error::StepUnderflow { .. } | Error::TooManySteps { .. } => ErrorClass::Numeric,
            Error::Io(_) => ErrorClass::Io,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn genericity(msg: impl Into<String>) -> Self {
        Error::Genericity {
            message: msg.into(),
            t: None,
        }
    }

    /// Attaches a time stamp to genericity and branch failures.
    pub(crate) fn at(self, time: f64) -> Self {
        match self {
            Error::Genericity { message, .. } => Error::Genericity {
                message,
                t: Some(time),
            },
            Error::Branch { message, .. } => Error::Branch {
                message,
                t: Some(time),
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
