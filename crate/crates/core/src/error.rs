use alloc::string::String;

/// Errors raised by the profile-code engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("word not in ([q]^n; S): gram {gram} at position {position} is not in the gram set")]
    GramNotInSet { gram: String, position: usize },

    #[error("{what}: estimated {estimate} exceeds the limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },

    #[error("not a profile vector ({0})")]
    NotAProfile(&'static str),

    #[error("period or degree hypothesis violated: {0}")]
    FitMismatch(String),

    #[error("systematic encoder hypotheses unmet: {0}")]
    LayoutUnsupported(String),

    #[error("length n = {n} too short for alphabet m = {m}: need n >= {required_n} (largest legal m is {max_m})")]
    LengthTooShort {
        n: usize,
        m: u64,
        required_n: usize,
        max_m: u64,
    },

    #[error("no {count} distinct nonzero residues mod {p} have vanishing power sums up to degree {d}; try a larger prime")]
    NoAlpha { count: usize, d: usize, p: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
