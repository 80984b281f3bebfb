use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("metric space must contain at least one point")]
    EmptySpace,
    #[error("distance matrix is {rows}x{cols} but {labels} labels were given")]
    DimensionMismatch { labels: usize, rows: usize, cols: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("negative distance d({0},{1})")]
    NegativeDistance(usize, usize),
    #[error("nonzero diagonal entry d({0},{0})")]
    NonzeroDiagonal(usize),
    #[error("zero distance between distinct points {0} and {1}")]
    ZeroOffDiagonal(usize, usize),
    #[error("asymmetric distances: d({0},{1}) != d({1},{0})")]
    Asymmetry(usize, usize),
    #[error("triangle inequality violated: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("graph is disconnected: no path from `{0}` to `{1}`")]
    DisconnectedGraph(String, String),
    #[error("edge {0}-{1} has nonpositive weight {2}")]
    NonpositiveWeight(String, String, Rational),
    #[error("edge {0}-{0} is a loop")]
    SelfLoop(String),
    #[error("gluing set K is empty")]
    EmptyK,
    #[error("gluing maps have different sizes ({0} vs {1})")]
    GluingSizeMismatch(usize, usize),
    #[error("gluing map is not injective at position {0}")]
    NotInjective(usize),
    #[error("gluing maps are not isometric at K positions ({0},{1})")]
    NotIsometricEmbedding(usize, usize),
    #[error("point {0} of H has more than one gate ({1} and {2})")]
    AmbiguousGate(usize, usize, usize),
    #[error("sequence must have at least one point")]
    EmptySequence,
    #[error("sequence repeats point {point} at consecutive positions {pos} and {next}", next = pos + 1)]
    RepeatedPoint { pos: usize, point: usize },
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("invalid length {0}: must be positive")]
    InvalidLength(Rational),
    #[error("not a partial matching: {0}")]
    NotAMatching(String),
    #[error("biased point {0} has no gate")]
    GateMissing(usize),
    #[error("not a sycamore twist: {0}")]
    NotASycamoreTwist(String),
    #[error("length {ell} is not below the 4-cut threshold m_X = {m_x}")]
    FourCutObstruction { ell: Box<Rational>, m_x: Box<Rational> },
    #[error("simplicial complex has no facets")]
    EmptyComplex,
    #[error("spaces have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("boundary composed with boundary is nonzero at degree {0}")]
    BoundarySquareNonzero(i32),
    #[error("subcomplex is not contained in the total complex")]
    NotASubcomplex,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Parse(_) | EmptyComplex | InvalidLength(_) => 2,
            EmptySpace
            | DimensionMismatch { .. }
            | NegativeDistance(..)
            | NonzeroDiagonal(_)
            | ZeroOffDiagonal(..)
            | Asymmetry(..)
            | TriangleViolation { .. }
            | DisconnectedGraph(..)
            | NonpositiveWeight(..)
            | SelfLoop(_) => 3,
            DuplicateLabel(_) | UnknownLabel(_) | PointOutOfRange(_) => 4,
            EmptyK
            | GluingSizeMismatch(..)
            | NotInjective(_)
            | NotIsometricEmbedding(..)
            | AmbiguousGate(..)
            | GateMissing(_)
            | NotASycamoreTwist(_)
            | FourCutObstruction { .. }
            | SizeMismatch(..) => 5,
            EmptySequence | RepeatedPoint { .. } | NotAMatching(_) | BoundarySquareNonzero(_) | NotASubcomplex => 1,
        }
    }
}
