use thiserror::Error;

use crate::collage::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("indeterminate value: infinite contributions of opposite sign or undecidable sign")]
    IndeterminateValue,
    #[error("unknown irrational generator #{0}")]
    UnknownGenerator(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the inequality system is infeasible")]
    EmptyPolyhedron,
    #[error("polyhedron is not strongly convex (lineality dimension {0})")]
    NotStronglyConvex(usize),
    #[error("slope is not bounded above on the polyhedron")]
    SlopeUnbounded,
    #[error("affine map is not a lattice isomorphism")]
    NotUnimodular,
    #[error("piece {0} is not contained in the ambient polyhedron")]
    NotSubPolyhedron(usize),
    #[error("decompositions have different bases")]
    BaseMismatch,
    #[error("chart {0} is not reachable from the base chart")]
    DisconnectedChart(usize),
    #[error("gluing path does not compose at step {0}")]
    PathMismatch(usize),
    #[error("open subset differs across gluing {0}")]
    NotGluingStable(usize),
    #[error("lattice generators do not have full rank")]
    RankDeficient,
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("point lies outside the polyhedron")]
    PointOutside,
    #[error("flags are based at different points")]
    BasePointMismatch,
    #[error("base point lies outside the polyhedron")]
    OutsidePolyhedron,
    #[error("invalid collage: {0}")]
    InvalidCollage(Violation),
    #[error("chart index {0} out of range")]
    UnknownChart(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
