use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("duplicate generator {0}")]
    DuplicateGenerator(u64),
    #[error("complement is infinite (gcd of generators is {0} > 1)")]
    InfiniteComplement(u64),
    #[error("requested depth {requested} exceeds table depth {depth}")]
    DepthExceeded { requested: u64, depth: u64 },
    #[error("residue class {0} contains no semigroup element")]
    AbsentClass(u64),
    #[error("length set of {element} has only {available} entries, needed {requested}")]
    NotEnoughLengths {
        element: u64,
        available: usize,
        requested: u64,
    },
    #[error("work limit of {limit} states exceeded (needed {needed})")]
    WorkLimitExceeded { limit: u64, needed: u64 },
    #[error("semigroup has a single generator; derived semigroups are undefined")]
    SingleGenerator,
    #[error("structure theorem machinery requires gcd 1, got {0}")]
    NotCofinite(u64),
    #[error("(n - b)/n1 or (n + c)/nk is not an integer for n = {0}; this is a bug")]
    NonExactDivision(u64),
    #[error("derived quantity overflows the supported integer range")]
    Overflow,
    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
