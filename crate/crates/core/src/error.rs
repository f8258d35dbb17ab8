use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown material `{name}` (available: {available})")]
    UnknownMaterial { name: String, available: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Grid { line: usize, message: String },

    #[error("spectral table has {rows} rows, at least {required} are required")]
    InsufficientData { rows: usize, required: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("model error: {0}")]
    Model(String),

    #[error(
        "Matsubara sum did not converge at a = {thickness} nm after {terms} terms \
         (last term {last_term:e}, running total {running_total:e})"
    )]
    Convergence {
        thickness: f64,
        terms: usize,
        last_term: f64,
        running_total: f64,
    },

    #[error("quadrature did not reach tolerance: value {value:e}, error estimate {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("no sign change of the free energy between {lo} nm and {hi} nm")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("no interior extremum of the free energy between {lo} nm and {hi} nm")]
    NoExtremum { lo: f64, hi: f64 },

    #[error("classical limit not reached below {a_max} nm at threshold {threshold}")]
    OnsetNotReached { a_max: f64, threshold: f64 },

    #[error("at a = {thickness} nm: {source}")]
    AtThickness {
        thickness: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
