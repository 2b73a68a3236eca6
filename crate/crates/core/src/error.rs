use thiserror::Error;

/// Errors raised by the barrier math.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TunnelError {
    #[error("invalid market parameters: {0}")]
    InvalidParams(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{what} outside its domain (got {value})")]
    Domain { what: &'static str, value: f64 },
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// Errors raised by the numerical oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature did not converge within depth {max_depth} (best estimate {best})")]
    Convergence { best: f64, max_depth: usize },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Tunnel(#[from] TunnelError),
}

/// Errors raised while ingesting or scanning market data.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}", match .line { Some(l) => format!("line {l}: {}", .msg), None => .msg.clone() })]
    Validation { line: Option<usize>, msg: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Tunnel(#[from] TunnelError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
