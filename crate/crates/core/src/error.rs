use thiserror::Error;

use crate::spectra::Rejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid family: {0}")]
    InvalidFamily(#[from] Rejection),

    #[error("dimension mismatch: spectrum has {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pair is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("infeasible reduced point: {0}")]
    InfeasiblePoint(String),

    #[error("cannot lift block {block}: multiplicity 1 requires r^2 = p q")]
    LiftImpossible { block: usize },

    #[error("operation requires g = {expected}, got g = {found}")]
    WrongG { expected: u32, found: u32 },

    #[error("{name} = {value} lies outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("bisection for theta_1 did not converge in {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("exact solver needs every block multiplicity >= 2, block {block} is simple")]
    SimpleBlock { block: usize },

    #[error("the largest-|lambda| eigenspace is one-dimensional, no extremal pair exists")]
    NoExtremalPair,

    #[error("no orthonormal pair exists in dimension {dim}")]
    NoPairs { dim: usize },

    #[error("number of samples must be positive")]
    ZeroSamples,
}
