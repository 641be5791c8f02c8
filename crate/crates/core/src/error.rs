use thiserror::Error;

use crate::expr::World;
use crate::multi_index::MultiIndex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dependent variable u{k} out of range (m = {m})")]
    ComponentOutOfRange { k: usize, m: usize },

    #[error("multi-index {index} has width {got}, expected {expected}")]
    WrongWidth {
        index: MultiIndex,
        got: usize,
        expected: usize,
    },

    #[error("base coordinate x{i} out of range for a {world} expression of dimension {dim}")]
    CoordOutOfRange { i: usize, dim: usize, world: World },

    #[error("expression mixes interior and boundary atoms")]
    MixedWorld,

    #[error("expected a {expected} expression, found a {found} atom")]
    WorldMismatch { expected: World, found: World },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("axis {axis} out of range 1..={dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("multi-index {index} has a zero entry on axis {axis}")]
    NegativeMultiIndex { index: MultiIndex, axis: usize },

    #[error("section has {got} components, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDimension(String),

    #[error("invalid horizontal form: {0}")]
    InvalidForm(String),

    #[error("no value assigned to atom {0}")]
    MissingAtom(String),

    #[error("pole: denominator evaluates to zero")]
    Pole,

    #[error("{func} is undefined at {value}")]
    Domain { func: &'static str, value: f64 },

    #[error("at probe point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<JetError>,
    },
}

pub type Result<T, E = JetError> = std::result::Result<T, E>;
