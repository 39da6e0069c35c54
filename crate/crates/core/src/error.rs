use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range 0..{n}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("not a Latin square: value {value} repeats at ({row}, {col})")]
    NotLatinSquare { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("invalid permutation {text:?}: {reason}")]
    InvalidPermutation { text: String, reason: String },
    #[error("permutation closure exceeds cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("element is not in the image of multiplication by {alpha}")]
    NotInImage { alpha: usize },

    #[error("invalid cocycle: {0}")]
    CocycleInvalid(String),
    #[error("transfer identity fails at ({q1}, {q2})")]
    TransferFailed { q1: usize, q2: usize },
    #[error("coboundary shift must vanish at the identity")]
    NotNormalizedShift,
    #[error("shifted cocycle value at ({q1}, {q2}) lies outside the Omega subgroup")]
    ValueEscapedOmega { q1: usize, q2: usize },
    #[error("derived subgroup of the reduced group is not isomorphic to the input's")]
    DerivedMismatch,

    #[error("automorphism list exceeds cap {cap} ({count} automorphisms)")]
    AutListTooLarge { count: u64, cap: usize },

    #[error("order {n} is outside the supported range 1..={cap}")]
    OrderOutOfRange { n: usize, cap: usize },
    #[error("order {n} admits a non-solvable group; enable the A5 special case")]
    NonSolvableOrderUnsupported { n: usize },
    #[error("corrupt catalog file: {0}")]
    CorruptCatalog(String),

    #[error("group is not an integral of the given group")]
    NotAnIntegral,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
