use thiserror::Error;

use crate::category::ObjectId;
use crate::graded::Key;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vectors live in different ambient bases ({0} vs {1})")]
    AmbientMismatch(String, String),
    #[error("linear combination of no vectors has no ambient basis")]
    EmptyCombination,
    #[error("key {key} is not a basis element of {ambient}")]
    UnknownBasisKey { key: Key, ambient: String },
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("invalid chain complex: {0}")]
    ComplexInvalid(String),
    #[error("unknown object {0}")]
    UnknownObject(ObjectId),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("cannot compose: {0}")]
    CompositionMismatch(String),
    #[error("composite path {path} has length {len}, exceeding the truncation bound {bound}")]
    TruncationOverflow { path: Key, len: usize, bound: usize },
    #[error("index maps do not match: {0}")]
    IndexMismatch(String),
    #[error("no module declared for object {0}")]
    ModuleUndefined(ObjectId),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("symmetric arity {arity} exceeds the enumeration cap {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("parity violation in even mode: {0}")]
    ParityViolation(String),
    #[error("factor is not homogeneous")]
    NotHomogeneous,
    #[error("normalization conventions differ")]
    ConventionMismatch,
    #[error("invalid interval configuration: {0}")]
    ConfigInvalid(String),
}
