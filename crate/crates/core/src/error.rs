use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus {modulus} is reducible (factor {factor})")]
    ReducibleModulus { modulus: String, factor: String },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind} `{name}` (valid: {})", valid.join(", "))]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: Vec<String>,
    },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("inconsistent action: relation {0} is violated")]
    InconsistentAction(String),
    #[error("modules have different fields or groups")]
    ModuleMismatch,
    #[error("operation requires a 2-group, got order {0}")]
    NotTwoGroup(usize),
    #[error("resolution too short: need length {needed}, have {have}")]
    InsufficientLength { needed: usize, have: usize },
    #[error("Massey product not defined: {0}")]
    MasseyUndefined(String),
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("malformed coaction spec: {0}")]
    MalformedSpec(String),
    #[error("no completion of the coaction spec gives a group action")]
    NoCompletion,
    #[error("vector is not fixed by the subgroup")]
    NotFixed,
    #[error("element is not in the normal complement")]
    NotInComplement,
    #[error("endotriviality methods disagree: direct={direct}, restriction={restriction}")]
    MethodDisagreement { direct: bool, restriction: bool },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
