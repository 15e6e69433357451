use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid resolves momenta up to {max_momentum:.6e} but {required:.6e} is needed")]
    Nyquist { max_momentum: f64, required: f64 },
    #[error("states live on different grids")]
    GridMismatch,
    #[error("a multi-level field needs 2 or 3 levels, got {0}")]
    LevelCount(usize),
    #[error("step halving changed the observables by {change:.3e}, above {tolerance:.3e}")]
    NotConverged { change: f64, tolerance: f64 },
    #[error("invalid propagation input: {0}")]
    InvalidInput(String),
    #[error("snapshot output failed: {0}")]
    Output(String),
}

impl From<csv::Error> for GridError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.to_string())
    }
}
