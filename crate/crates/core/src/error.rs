use thiserror::Error;

use crate::graph::{Decoration, Flavor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HgcError {
    #[error("invalid parameters m={m}, n={n}: need m >= 1 and n - m >= 3")]
    InvalidParameters { m: i64, n: i64 },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("decoration {decoration:?} is not allowed in flavor {flavor:?}")]
    IllegalDecoration { decoration: Decoration, flavor: Flavor },

    #[error("graphs are not isomorphic")]
    NotIsomorphic,

    #[error("parameter or flavor mismatch: {0}")]
    Mismatch(String),

    #[error("operation not defined for flavor {0:?}")]
    UnsupportedFlavor(Flavor),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },

    #[error("arity must be at least {min}, got {got}")]
    Arity { min: usize, got: usize },

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("not a Maurer-Cartan element")]
    NotMaurerCartan,

    #[error("element is outside the primed subcomplex: {0}")]
    NotPrimed(String),

    #[error("series does not terminate: {0}")]
    NonTerminating(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("window: {0}")]
    Window(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = HgcError> = std::result::Result<T, E>;
