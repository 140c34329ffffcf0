use thiserror::Error;

/// Errors raised by distribution handling, lattice operations and decompositions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    MalformedRow { line: usize, msg: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("duplicate outcome {0:?}")]
    DuplicateOutcome(Vec<u32>),

    #[error("negative probability {0}")]
    NegativeProbability(f64),

    #[error("total probability mass {total} outside [1 - {eps}, 1 + {eps}]")]
    TotalMassInvalid { total: f64, eps: f64 },

    #[error("variable selection is empty")]
    EmptySelection,

    #[error("variable index {index} out of range for {count} variables")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("variable selections overlap")]
    Overlapping,

    #[error("too many variables: {got} (limit {limit})")]
    TooManyVariables { got: usize, limit: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid antichain: {0}")]
    InvalidAntichain(String),

    #[error("lattice size {n} out of range 1..={max}")]
    LatticeSize { n: usize, max: usize },

    #[error("expected {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },

    #[error("redundancy {r} outside feasible interval [{lo}, {hi}]")]
    Infeasible { r: f64, lo: f64, hi: f64 },

    #[error("not a set-theoretic system; negative atoms: {}", format_negatives(.0))]
    NotSetTheoretic(Vec<(String, f64)>),

    #[error("invalid target {0}")]
    InvalidTarget(usize),

    #[error("atom {label} has negative size {size}")]
    NegativeAtom { label: String, size: f64 },

    #[error("decomposition does not validate: failing checks {0:?}")]
    NotValid(Vec<String>),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

fn format_negatives(v: &[(String, f64)]) -> String {
    v.iter()
        .map(|(l, s)| format!("{l} = {s:.9}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
