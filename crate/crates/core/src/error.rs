use thiserror::Error;

/// Coarse failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Regime,
    Numerical,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("environment has no modes")]
    EmptyEnvironment,
    #[error("mode {index}: zero detuning from the qubit (omega = omega0 = {omega})")]
    ZeroDetuning { index: usize, omega: f64 },
    #[error("{what} must be positive, got {value}")]
    NonPositiveFrequency { what: String, value: f64 },
    #[error("mode {index}: coupling must be non-negative and finite, got {value}")]
    InvalidCoupling { index: usize, value: f64 },
    #[error("temperature must be non-negative and finite, got {0}")]
    InvalidTemperature(f64),
    #[error("occupation vector has {got} entries for {expected} modes")]
    OccupationLength { expected: usize, got: usize },
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dispersive regime violated: max |g_j/Delta_k| = {max_ratio} >= {limit}")]
    RegimeViolated { max_ratio: f64, limit: f64 },
    #[error("method {method} requires {requirement}")]
    MethodMismatch {
        method: &'static str,
        requirement: &'static str,
    },

    #[error("determinant phase jumped by {step} rad between t = {t_prev} and t = {t}; refine the time grid")]
    BranchTracking { t_prev: f64, t: f64, step: f64 },
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
    #[error("singular matrix in {0}")]
    Singular(&'static str),
    #[error("thermal truncation: per-mode cutoff cap {cap} reached with {covered} of the weight covered; raise the cap or lower T")]
    TruncationCap { cap: usize, covered: f64 },
    #[error("excitation sector {excitations} has dimension {dim} > cap {cap}")]
    SectorTooLarge {
        excitations: usize,
        dim: usize,
        cap: usize,
    },
    #[error("time grid too coarse: only {samples} samples before the first minimum (need {needed})")]
    GridTooCoarse { samples: usize, needed: usize },
    #[error("|r| vanishes at t = {0} inside the fit window")]
    ZeroInFitWindow(f64),
    #[error("fit did not converge: {0}")]
    FitFailed(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            EmptyEnvironment
            | ZeroDetuning { .. }
            | NonPositiveFrequency { .. }
            | InvalidCoupling { .. }
            | InvalidTemperature(_)
            | OccupationLength { .. }
            | InvalidGrid(_)
            | Config(_)
            | MethodMismatch { .. } => ErrorKind::Config,
            RegimeViolated { .. } => ErrorKind::Regime,
            BranchTracking { .. }
            | Eigensolver(_)
            | Singular(_)
            | TruncationCap { .. }
            | SectorTooLarge { .. }
            | GridTooCoarse { .. }
            | ZeroInFitWindow(_)
            | FitFailed(_) => ErrorKind::Numerical,
            Io(_) => ErrorKind::Io,
        }
    }

    /// Short machine-readable category, e.g. `method-mismatch`.
    pub fn category(&self) -> &'static str {
        use Error::*;
        match self {
            EmptyEnvironment => "empty-environment",
            ZeroDetuning { .. } => "zero-detuning",
            NonPositiveFrequency { .. } => "nonpositive-frequency",
            InvalidCoupling { .. } => "invalid-coupling",
            InvalidTemperature(_) => "invalid-temperature",
            OccupationLength { .. } => "occupation-length",
            InvalidGrid(_) => "invalid-grid",
            Config(_) => "config",
            RegimeViolated { .. } => "regime-violated",
            MethodMismatch { .. } => "method-mismatch",
            BranchTracking { .. } => "branch-tracking",
            Eigensolver(_) => "eigensolver",
            Singular(_) => "singular",
            TruncationCap { .. } => "truncation-cap",
            SectorTooLarge { .. } => "sector-too-large",
            GridTooCoarse { .. } => "grid-too-coarse",
            ZeroInFitWindow(_) => "fit-zero",
            FitFailed(_) => "fit-failed",
            Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
