use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid dimension set: {0}")]
    InvalidSet(String),

    #[error("invalid marking: {0}")]
    InvalidMarking(String),

    #[error("{what} must lie in {lo}..={hi}, got {got}")]
    OutOfRange {
        what: &'static str,
        got: u64,
        lo: u64,
        hi: u64,
    },

    #[error("brute-force oracle refuses n = {n}: bound is n <= {bound}")]
    OracleBound { n: u32, bound: u32 },

    #[error("table up to n = {n_max} needs {required} bytes, limit is {limit} bytes")]
    MemoryLimit {
        n_max: u32,
        required: u64,
        limit: u64,
    },

    #[error("n = {0} is not supported: Reinhardt domains are considered in C^n with n >= 2")]
    DimensionTooSmall(u32),

    #[error("lemma hypothesis requires n >= 7, got n_lo = {0}")]
    LemmaHypothesis(u32),

    #[error("no smooth bounded witness: {0}")]
    NoWitness(String),

    #[error("unsupported table file: {0}")]
    UnsupportedFormat(String),

    #[error("corrupt table file at record {record}: {reason}")]
    Corrupt { record: usize, reason: String },

    #[error("corrupt table file: checksum mismatch (stored {stored:#018x}, computed {computed:#018x})")]
    Checksum { stored: u64, computed: u64 },

    #[error("write failed after {written} bytes: {source}")]
    Write {
        written: u64,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
