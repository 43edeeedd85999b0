use thiserror::Error;

/// Errors raised by mesh construction, interpolation and evaluation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("point {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("order {0} is not supported")]
    Order(usize),

    #[error("node {node} has multiplicity {multiplicity} but {supplied} derivative values were supplied")]
    MultiplicityMismatch {
        node: usize,
        multiplicity: usize,
        supplied: usize,
    },

    #[error("invalid knot sequence: {0}")]
    Knots(String),

    #[error("degenerate interval [{0}, {1}]")]
    Degenerate(f64, f64),

    #[error("grid coordinates must be strictly increasing with at least two entries")]
    Grid,

    #[error("index {index} out of range for {what}")]
    Index { index: usize, what: &'static str },

    #[error("invalid Shishkin parameters: {0}")]
    Shishkin(String),

    #[error("invalid edge selection at macro node ({i}, {j}): {reason}")]
    Sigma { i: usize, j: usize, reason: String },

    #[error("boundary edge passed where an interior edge is required")]
    BoundaryEdge,

    #[error("unknown name '{0}'")]
    UnknownName(String),

    #[error("operator orientation does not match the macro pairing")]
    Orientation,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("finite-difference step {0} is too small for the evaluation points")]
    Step(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
