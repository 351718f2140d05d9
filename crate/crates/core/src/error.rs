use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid germ document: {0}")]
    Schema(String),

    #[error("branch {branch}, component {component} has a nonzero constant term")]
    ConstantTerm { branch: usize, component: usize },

    #[error("source dimension n = {n} exceeds target dimension p = {p}")]
    SourceExceedsTarget { n: usize, p: usize },

    #[error("corank {corank} exceeds one (branch {branch})")]
    CorankTooLarge { corank: usize, branch: usize },

    #[error("delta possibly infinite: local algebra of branch {branch} did not stabilize by jet order {max_order}")]
    DeltaNotFinite { branch: usize, max_order: u32 },

    #[error("jet order {order} is too small for level {level}; raise it to at least {suggested}")]
    JetOrderTooSmall { order: u32, level: usize, suggested: u32 },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("correction system is inconsistent at degree {degree}; raise the degree")]
    Inconsistent { degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
