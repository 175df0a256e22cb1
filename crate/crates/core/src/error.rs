use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient sample: need at least {need} observations, got {got}")]
    InsufficientSample { need: usize, got: usize },

    #[error("zero output variance: model output is degenerate")]
    ZeroOutputVariance,

    #[error("invalid input spec `{name}`: lower bound {lower} must be below upper bound {upper}")]
    InvalidBounds { name: String, lower: f64, upper: f64 },

    #[error("invalid SIR configuration: {0}")]
    InvalidSirConfig(String),

    #[error("runaway simulation: exceeded {0} events without extinction")]
    RunawaySimulation(u64),

    #[error("no extinction: metamodel did not reach the extinction threshold by t = {t_max}")]
    NoExtinction { t_max: f64 },

    #[error("unsupported wavelet family `{0}`")]
    UnsupportedFamily(String),

    #[error("sample too small: J_n would fall below -1 at n = {0}")]
    SampleTooSmall(usize),

    #[error("grid too large: {cells} cells exceeds the {max} cell budget")]
    GridTooLarge { cells: usize, max: usize },

    #[error("quadrature did not converge within {0} nodes")]
    QuadratureNonConvergence(usize),

    #[error("empty penalty grid")]
    EmptyPenaltyGrid,

    #[error("config error: {0}")]
    Config(String),

    #[error("failed to write `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: config errors exit 2, runtime errors 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidBounds { .. } | Error::EmptyPenaltyGrid => 2,
            _ => 3,
        }
    }
}
