use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("operands belong to different contexts")]
    ContextMismatch,

    #[error("exponent overflow (exponents must stay below 2^31)")]
    ExponentOverflow,

    #[error("coefficient of {monomial} is not divisible by p")]
    NotDivisible { monomial: String },

    #[error("f is divisible by p, so (p, f) is not a regular sequence")]
    FDivisibleByP,

    #[error("f is a unit (constant term not divisible by p)")]
    FIsUnit,

    #[error("exponent {l} outside 0..={max}")]
    PowerOutOfRange { l: u32, max: u32 },

    #[error("invalid ladder index {entries:?}: {reason}")]
    InvalidIndex { entries: Vec<u32>, reason: String },

    #[error("resource limit exceeded: {what} reached {count} (limit {limit})")]
    ResourceLimit {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("containment set {observed:?} at step {step} is not downward closed")]
    MonotonicityViolation { step: usize, observed: Vec<bool> },

    #[error("sequence reaches p at index {index}; the threshold sum is undefined")]
    SequenceHitP { index: usize },

    #[error("Fermat prediction needs p > N (got p = {p}, N = {n})")]
    PNotGreaterThanN { p: u32, n: usize },

    #[error("{what} predicts {predicted:?} but the ladder computed {computed:?}")]
    CrossCheckFailed {
        what: String,
        predicted: Vec<u32>,
        computed: Vec<u32>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors that signal a defect in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::MonotonicityViolation { .. }
                | Error::NotDivisible { .. }
                | Error::CrossCheckFailed { .. }
        )
    }
}
