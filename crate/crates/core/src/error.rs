use thiserror::Error;

/// Everything that can go wrong while building or querying finite spaces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyGroundSet: a ground set needs at least one point")]
    EmptyGroundSet,
    #[error("SizeExceeded: {what} is {actual}, limit is {limit}")]
    SizeExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("DuplicateLabel: {0}")]
    DuplicateLabel(String),
    #[error("UnknownLabel: {0}")]
    UnknownLabel(String),
    #[error("SubsetOutOfRange: mask {0:#x} has bits outside the ground set")]
    SubsetOutOfRange(u32),
    #[error("MissingEmptyOrWhole: the empty set and the whole space must both be open")]
    MissingEmptyOrWhole,
    #[error("NotClosedUnderUnion: {0},{1}")]
    NotClosedUnderUnion(String, String),
    #[error("NotClosedUnderIntersection: {0},{1}")]
    NotClosedUnderIntersection(String, String),
    #[error("NotAPreorder: {0}")]
    NotAPreorder(String),
    #[error("EmptyCarrier: a subspace needs a nonempty carrier")]
    EmptyCarrier,
    #[error("UnknownOperator: {name} (valid names: {valid})")]
    UnknownOperator { name: String, valid: String },
    #[error("IncompleteTable: operator table has {actual} entries, expected {expected}")]
    IncompleteTable { expected: usize, actual: usize },
    #[error("NotAssociated: operator T{index} violates U ⊆ T(U) for open U = {open}")]
    NotAssociated { index: usize, open: String },
    #[error("TooFewOperators: a bi-operator space needs at least 2 operators, got {0}")]
    TooFewOperators(usize),
    #[error("IndexOutOfRange: operator index {index} not in 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("UnsupportedOperators: {0}")]
    UnsupportedOperators(String),
    #[error("DomainMismatch: {0}")]
    DomainMismatch(String),
    #[error("UnmappedPoint: {0}")]
    UnmappedPoint(String),
    #[error("UnknownLaw: {0}")]
    UnknownLaw(String),
    #[error("ParseError at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("UnknownAtom: {name} at position {position}")]
    UnknownAtom { name: String, position: usize },
    #[error("ClosureNotClosed: {class}-closure of {subset} is not {class}-closed")]
    ClosureNotClosed { class: &'static str, subset: String },
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
