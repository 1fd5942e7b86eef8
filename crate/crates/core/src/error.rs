//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, HypackError>;

/// All failure modes of the library.
///
/// Domain violations (`DomainError`, `TolOutOfRange`, …) indicate bad caller
/// input; `Internal` indicates a broken invariant and is always a bug.
#[derive(Debug, Error)]
pub enum HypackError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("zero vector is not a projective point")]
    ZeroVector,

    #[error("unsupported dimension {0}: only n = 3 and n = 4 are supported")]
    UnsupportedDimension(usize),

    #[error("no real polar hyperplane: point is {0} (must be an outer point)")]
    NoPolarHyperplane(&'static str),

    #[error("hyperplane form is not normalized (<u,u> = {0}, expected 1)")]
    NotNormalized(f64),

    #[error("form is not spacelike (<u,u> = {0} <= 0): cannot normalize")]
    NotSpacelike(f64),

    #[error("arccosh domain error: argument {0} < 1 - 1e-12")]
    ArccoshDomain(f64),

    #[error("non-finite input: {0}")]
    NonFinite(f64),

    #[error("{name} = {value} outside the open interval ({lo}, {hi})")]
    DomainError {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("tolerance {0} outside the accepted range [1e-14, 1e-3]")]
    TolOutOfRange(f64),

    #[error("Lambert-cube case excluded: cos^2(a12) - sin^2(a01)sin^2(a23) = {0} < 0")]
    LambertCubeExcluded(f64),

    #[error("negative volume {0} below the -1e-12 guard: numerical invariant broken")]
    NegativeVolume(f64),

    #[error("need at least {needed} halfspaces for dimension {dim}, got {got}")]
    TooFewHalfspaces { needed: usize, got: usize, dim: usize },

    #[error("polytope is unbounded in the projective chart (witness halfspace subset {subset:?})")]
    UnboundedPolytope { subset: Vec<usize> },

    #[error("point is not a vertex of the polytope")]
    NotAVertex,

    #[error("vertex is {0}, expected an outer point")]
    VertexNotOuter(&'static str),

    #[error(
        "input polytope has {0} outer vertices; decomposition requires a polar-truncated input"
    )]
    OuterVerticesRemain(usize),

    #[error("base planes {i} and {j} are at distance {dist} < 2*height = {min}: hyperballs overlap")]
    HyperballsOverlap { i: usize, j: usize, dist: f64, min: f64 },

    #[error("cutting plane intersects the hyperball on non-incident base plane {base_index}")]
    CutIntersectsHyperball { base_index: usize },

    #[error("decomposition does not make progress: candidate count {n_after} >= {n_before}")]
    NoProgress { n_before: usize, n_after: usize },

    #[error("decomposition exceeded the recursion depth bound {0}")]
    DepthExceeded(usize),

    #[error("invalid fixture: {0}")]
    InvalidFixture(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
