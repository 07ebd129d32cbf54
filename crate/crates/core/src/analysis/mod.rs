//! Derived quantities: recurrence time, short-time decay rates, sweeps.

pub mod fit;
pub mod sweep;
pub mod tmax;

pub use fit::{deviation_series, fit_modulus, fit_stmd, FitObjective, FitPolicy, FitResult, DEFAULT_WINDOW_FRACTION};
pub use sweep::{sweep_tmax, SweepPoint, SweepResult};
pub use tmax::{find_tmax, recurrence_markers, tmax_of_modulus, TmaxResult};
