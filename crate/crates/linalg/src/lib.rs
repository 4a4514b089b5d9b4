//! Exact rational linear algebra: matrices, fraction-free determinants,
//! kernel bases and a two-phase simplex with certificates.

mod det;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod rational;

pub use lp::{
    lp_solve, strict_feasibility, verify_farkas, verify_strict, Direction, LinearProgram,
    LpOutcome, LpStatus, Sense, StrictFeasibility,
};
pub use matrix::{dot, RationalMatrix};
pub use rational::{frac, int, parse_rational, Rational};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has rank {rank}, expected full row rank {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
