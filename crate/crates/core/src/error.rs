use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("degree {requested} exceeds the configured maximum {max}")]
    DegreeOverflow { requested: usize, max: usize },

    #[error("length {requested} exceeds the table bound {bound}")]
    LengthOverflow { requested: usize, bound: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("series shape mismatch: (rank {0}, degree {1}) vs (rank {2}, degree {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("series is not a unit: constant term {0}")]
    NotAUnit(i64),

    #[error("longitude reduction did not stabilize after {0} stages")]
    NonConvergence(usize),

    #[error("component count mismatch: {0} vs {1}")]
    ComponentMismatch(usize, usize),

    #[error("hypothesis unmet: mu-bar({index}) = {value} is nonzero in the {which} link")]
    HypothesisUnmet {
        index: String,
        value: i64,
        which: &'static str,
    },

    #[error("quotient map is not surjective: {0}")]
    NotSurjective(String),

    #[error("word is not in the kernel: it maps to element {0}")]
    NotInKernel(usize),
}
