use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed element for {model}: {reason}")]
    MalformedElement { model: String, reason: String },

    #[error("cannot parse group descriptor {descriptor:?}: {reason}")]
    Descriptor { descriptor: String, reason: String },

    #[error("ball exceeded the cap of {cap} elements; complete up to radius {radius_reached}")]
    Capacity { radius_reached: u64, cap: usize },

    #[error("radius {r} is outside the oracle range 0..={r_max}")]
    Range { r: u64, r_max: u64 },

    #[error("{model} has no closed-form word length")]
    NoClosedForm { model: String },

    #[error("invalid step distribution: {0}")]
    Distribution(String),

    #[error("walk on {model} is recurrent; occupation times are infinite")]
    Recurrent { model: String },

    #[error("horizon of {horizon} steps exhausted ({context})")]
    Horizon { horizon: u64, context: String },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("cannot fit exponent: {0}")]
    Fit(String),

    #[error("experiment failed at radius {r}: {reason}")]
    Experiment { r: u64, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
