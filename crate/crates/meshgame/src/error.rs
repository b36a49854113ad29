use thiserror::Error;

/// Everything that can go wrong across the toolkit, from malformed input
/// files to numerical trouble inside the solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {}", .0.join("; "))]
    InvalidNetwork(Vec<String>),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{0}")]
    Domain(String),

    #[error("invalid linear program: {0}")]
    InvalidLp(String),

    #[error("numerical failure: {0}")]
    NumericFailure(String),

    #[error("coalition {coalition} cannot serve its fixed demands; blocking sessions: {sessions:?}")]
    StrictInfeasible {
        coalition: String,
        sessions: Vec<String>,
    },

    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),

    #[error("{0} providers exceeds the enumeration guard of {1}")]
    TooManyProviders(u32, u32),

    #[error("characteristic function incomplete; missing coalitions: {0:?}")]
    IncompleteGame(Vec<String>),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid routing: {0}")]
    InvalidRouting(String),

    #[error("simplex plot requires exactly 3 providers, got {0}")]
    PlotDimension(u32),

    #[error("degenerate imputation simplex: v(grand) - sum of standalone values = {0}")]
    DegenerateSimplex(f64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("failed to parse {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
