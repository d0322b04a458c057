use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: d = {left} vs d = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("d = {d} exceeds the supported maximum {max}")]
    DimensionTooLarge { d: usize, max: usize },

    #[error("index {index} is outside [1, {}]", 2 * .d)]
    IndexOutOfRange { index: usize, d: usize },

    #[error("bits {bits:#x} do not fit in a space with d = {d}")]
    BitsOutOfRange { bits: u64, d: usize },

    #[error("[{a},{b}] is not an odd interval inside [1, {}]", 2 * .d)]
    InvalidInterval { a: usize, b: usize, d: usize },

    #[error("vector {vector} is not perpendicular to e_{pivot}")]
    NotPerpendicular { pivot: usize, vector: String },

    #[error("subspace is not isotropic")]
    NotIsotropic,

    #[error("e_{pivot} does not lie in the subspace")]
    PivotNotInSubspace { pivot: usize },

    #[error("subspace is not a member of the family for d = {d}")]
    NotInFamily { d: usize },

    #[error("vector {vector} is not in the union of the family")]
    NotInRange { vector: String },

    #[error("partitions of different sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("symmetric group order m = {m} is not supported (1..={max})")]
    UnsupportedOrder { m: usize, max: usize },

    #[error("expected exactly one multiplicity-one bijection for m = {m}, found {count}")]
    UniquenessViolation { m: usize, count: usize },

    #[error("no family table for {weyl_type} with n_c = {n_c}")]
    TableNotFound { weyl_type: String, n_c: usize },

    #[error("no consistent column correspondence for {weyl_type}, n_c = {n_c}")]
    CxMismatch { weyl_type: String, n_c: usize },

    #[error("characteristic-function matrix for d = {d} is {rows}x{cols}, not square")]
    NotSquare { d: usize, rows: usize, cols: usize },

    #[error("characteristic-function matrix for d = {d} has determinant {det}, not +-1")]
    NotUnimodular { d: usize, det: String },

    #[error("function is not defined on exactly the union of the family for d = {d}")]
    DomainMismatch { d: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
