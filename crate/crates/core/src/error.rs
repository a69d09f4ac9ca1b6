use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the domain where the closed forms are defined.
    #[error("parameter domain violation: {0}")]
    ParameterDomain(String),

    /// Parameters that collapse the breather ansatz (zero decay or zero carrier).
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("singular point at s = {s}, t = {t}")]
    Singularity { s: f64, t: f64 },

    #[error("evaluation domain violation: {0}")]
    Domain(String),

    #[error("analytic continuation is not real: |Im| = {imag:e} at s = {s}, t = {t}")]
    Continuation { imag: f64, s: f64, t: f64 },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("grid too small: deviation {deviation:e} from background at the endpoints")]
    GridTooSmall { deviation: f64 },

    #[error("unexpected waveform structure: {0}")]
    Structure(String),

    #[error("solver blew up at t = {t}: l_inf = {l_inf:e}")]
    Instability { t: f64, l_inf: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("sample {index} failed: {source}")]
    Sample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Strips `Sample` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Sample { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.root(),
            Error::ParameterDomain(_) | Error::Degenerate(_) | Error::Config(_) | Error::Domain(_)
        )
    }
}
