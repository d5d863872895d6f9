use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a polyhedron failed to be the epigraph of a proper function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum EpigraphDefect {
    #[error("the set is empty")]
    Empty,
    /// `(0, ..., 0, -1)` is a recession direction, so the function takes
    /// the value minus infinity somewhere.
    #[error("unbounded below in the last coordinate")]
    UnboundedBelow,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("the set is empty")]
    EmptySet,
    #[error("the point does not belong to the set")]
    PointNotInSet,
    #[error("the point does not belong to the effective domain")]
    PointNotInDomain,
    #[error("the set does not contain the origin")]
    NotContainingOrigin,
    #[error("not the epigraph of a proper function: {0}")]
    NotAnEpigraph(EpigraphDefect),
    #[error("the effective domains do not intersect")]
    EmptyDomainIntersection,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid index set: {0}")]
    InvalidIndex(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySet => "EMPTY_SET",
            Error::PointNotInSet => "POINT_NOT_IN_SET",
            Error::PointNotInDomain => "POINT_NOT_IN_DOMAIN",
            Error::NotContainingOrigin => "NOT_CONTAINING_ORIGIN",
            Error::NotAnEpigraph(_) => "NOT_AN_EPIGRAPH",
            Error::EmptyDomainIntersection => "EMPTY_DOMAIN_INTERSECTION",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::InvalidIndex(_) => "INVALID_INDEX",
            Error::Parse { .. } => "PARSE_ERROR",
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
