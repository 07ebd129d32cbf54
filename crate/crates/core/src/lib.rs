//! Coherence of a qubit dispersively coupled to a finite set of thermal bosonic
//! modes.
//!
//! The environment's effect is the factor `r_N(t)` multiplying the qubit's
//! off-diagonal element. It is computed by several independent routes:
//!
//! - [`effective::r_general`]: determinant of a `2N x 2N` Gaussian matrix built
//!   from the eigensystem of the Magnus coupling matrix `M(t)`;
//! - [`effective::r_degenerate`] and [`effective::r_pair`]: closed forms for
//!   identical modes and for two modes;
//! - [`symplectic::r_symplectic`]: metaplectic/Cayley evaluation for identical
//!   modes;
//! - [`oracle::run_oracle`]: exact propagation of the full Jaynes–Cummings
//!   Hamiltonian over a truncated thermal mixture.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*F64` aliases
//! below are what most callers want.
//!
//! ```
//! use dispersive_core::{analysis, effective, ModelSpecF64, TimeGridF64};
//! let spec = ModelSpecF64::from_lists(&[0.01], &[0.8], 1.0);
//! let r = effective::r_general(&spec, &TimeGridF64::new(6000.0, 6001).unwrap()).unwrap();
//! let t_max = analysis::find_tmax(&r).unwrap().t_max;
//! assert!((t_max - std::f64::consts::PI / (2.0 * spec.lambda())).abs() < 1.0);
//! ```

pub mod analysis;
pub mod branch;
pub mod effective;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod series;
pub mod symplectic;

pub use error::{Error, ErrorKind, Result};
pub use model::{ModeSpec, ModelSpec, QubitSpec};
pub use scalar::Real;
pub use series::{CoherenceSeries, Method, TimeGrid};

pub type ModelSpecF64 = ModelSpec<f64>;
pub type ModelSpecF32 = ModelSpec<f32>;
pub type TimeGridF64 = TimeGrid<f64>;
pub type TimeGridF32 = TimeGrid<f32>;
pub type CoherenceSeriesF64 = CoherenceSeries<f64>;
pub type CoherenceSeriesF32 = CoherenceSeries<f32>;
