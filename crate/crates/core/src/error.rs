//! Error taxonomy shared by the library and the CLI.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system type label `{0}` (expected A1, A1xA1, A2 or B2)")]
    UnknownType(String),

    #[error("elements belong to different root data")]
    MixedRootData,

    #[error("weight is not in the rational span of the simple roots")]
    NotInRootSpan,

    #[error("cuspidal parameters must be non-integral: mu_0, mu_1 not in Z (got {0})")]
    IntegralCuspidalParameter(String),

    #[error("twist set is not commuting: {0}")]
    NonCommutingGamma(String),

    #[error("module is not bijective for the twist: the {root} block at weight {weight} is not invertible")]
    NonInvertibleTwistBlock { root: String, weight: String },

    #[error("neither virtual character carries a certified finite support; the pairing sum is not provably finite")]
    NoCertifiedSupport,

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("support certification failed: nonzero value at {0} outside the candidate set")]
    CertificationFailed(String),

    #[error("module constructor outside the pairing dispatch table: {0}")]
    DispatchUnsupported(String),

    #[error("module requires an infinitesimal character for this operation")]
    NoInfinitesimalCharacter,

    #[error("config error at line {line}, column {col}: {msg}")]
    Config { line: usize, col: usize, msg: String },

    #[error("config error: {0}")]
    ConfigGeneral(String),

    #[error("unknown output format `{0}` (expected csv or jsonl)")]
    UnknownFormat(String),

    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),

    #[error("{0}")]
    Internal(String),
}

impl Error {
    /// CLI exit code class: 1 = config error, 2 = mathematical precondition,
    /// 3 = verification mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::ConfigGeneral(_) | Error::UnknownFormat(_) => 1,
            Error::VerificationMismatch(_) => 3,
            _ => 2,
        }
    }
}
