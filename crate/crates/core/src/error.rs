use thiserror::Error;

use crate::complex::CellId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell {0} does not exist")]
    UnknownCell(CellId),
    #[error("cell {0} has already been removed")]
    DeadCell(CellId),
    #[error("cell {face} is not a face of cell {coface}")]
    NotIncident { face: CellId, coface: CellId },
    #[error("cell {face} cannot be a face of cell {cell}: dimensions differ by more than one")]
    DimensionMismatch { cell: CellId, face: CellId },
    #[error("cell {face} is listed twice in the boundary of cell {cell}")]
    DuplicateFace { cell: CellId, face: CellId },
    #[error("complex is not a valid filtered complex ({monotonicity} monotonicity violations, {boundary} boundary violations)")]
    Invalid {
        monotonicity: usize,
        boundary: usize,
    },
    #[error("cell set is not closed: face {face} of {cell} is missing")]
    NotClosed { cell: CellId, face: CellId },
    #[error("top-dimensional cells have mixed dimensions ({0} and {1})")]
    MixedTopDimensions(usize, usize),
    #[error("filtration is not the lower-star extension of its top cells (cell {0})")]
    NotLowerStar(CellId),
    #[error("perturbation does not describe the current filtration of this complex")]
    PerturbationMismatch,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("grid has no cells")]
    EmptyGrid,
    #[error("grid shape {shape:?} needs {expected} values, got {got}")]
    ValueCount {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("simplex {index} repeats vertex {vertex}")]
    DuplicateVertex { index: usize, vertex: usize },
    #[error("simplex {index} references vertex {vertex}, but only {count} vertices exist")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        count: usize,
    },
    #[error("simplex {0} is empty")]
    EmptySimplex(usize),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: face {face} does not precede its coface")]
    FaceOrder { line: usize, face: usize },
    #[error("line {line}: face {face} does not exist")]
    DanglingFace { line: usize, face: usize },
    #[error("line {line}: {source}")]
    Complex {
        line: usize,
        #[source]
        source: ComplexError,
    },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
