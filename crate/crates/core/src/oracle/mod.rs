//! Exact reference: full Jaynes–Cummings dynamics with a Fock-diagonal thermal
//! environment, truncated by weight.
//!
//! Each Fock product is propagated independently inside the two excitation
//! sectors it touches; sector blocks are diagonalized once and shared.

pub mod ensemble;
pub mod propagate;
pub mod sector;

pub use ensemble::{enumerate_thermal_ensemble, thermal_weight, FockProduct, ThermalEnsemble};
pub use propagate::{propagate_pure, PureContribution};
pub use sector::{sector_dimension, QubitLevel, SectorBasis, SectorSpectrum};

use std::collections::BTreeMap;

use nalgebra::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{cis, to_f64, Real};
use crate::series::{CoherenceSeries, Method, TimeGrid};

/// Truncation of the thermal mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Thermal weight allowed to be dropped.
    pub weight_tol: f64,
    /// Hard ceiling on any single mode's occupation.
    pub per_mode_cutoff_max: usize,
    /// Largest sector block that will be diagonalized.
    pub sector_dim_cap: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self {
            weight_tol: 1e-3,
            per_mode_cutoff_max: 40,
            sector_dim_cap: 20_000,
        }
    }
}

impl TruncationSpec {
    pub fn check(&self) -> Result<()> {
        if !(self.weight_tol > 0.0 && self.weight_tol < 1.0) {
            return Err(Error::Config(format!(
                "weight tolerance must lie in (0, 1), got {}",
                self.weight_tol
            )));
        }
        if self.per_mode_cutoff_max == 0 || self.sector_dim_cap == 0 {
            return Err(Error::Config("truncation caps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult<T: Real> {
    /// Coherence with the free and mean dispersive rotation removed, normalized
    /// to one at `t = 0`; directly comparable with `r_N(t)`.
    pub series: CoherenceSeries<T>,
    pub sigma_z: Vec<T>,
    pub discarded_weight: T,
    pub members: usize,
}

/// Runs the exact reference on `grid`.
pub fn run_oracle<T: Real>(
    spec: &ModelSpec<T>,
    trunc: &TruncationSpec,
    grid: &TimeGrid<T>,
) -> Result<OracleResult<T>> {
    let ensemble = enumerate_thermal_ensemble(spec, trunc)?;
    let mut needed: Vec<usize> = ensemble
        .members
        .iter()
        .flat_map(|(f, _)| [f.total(), f.total() + 1])
        .collect();
    needed.sort_unstable();
    needed.dedup();
    let sectors: BTreeMap<usize, SectorSpectrum<T>> = needed
        .par_iter()
        .map(|&e| SectorSpectrum::new(spec, e, trunc.sector_dim_cap).map(|s| (e, s)))
        .collect::<Result<_>>()?;

    let times = grid.times();
    let contributions: Vec<PureContribution<T>> = ensemble
        .members
        .par_iter()
        .map(|(fock, _)| {
            let e = fock.total();
            propagate_pure(&sectors[&e], &sectors[&(e + 1)], fock, &times)
        })
        .collect::<Result<_>>()?;

    // Weighted sum in member order, so results do not depend on scheduling.
    let zero = Complex::new(T::zero(), T::zero());
    let mut coherence = vec![zero; times.len()];
    let mut sigma_z = vec![T::zero(); times.len()];
    for ((_, w), c) in ensemble.members.iter().zip(&contributions) {
        for (acc, &v) in coherence.iter_mut().zip(&c.coherence) {
            *acc += v * *w;
        }
        for (acc, &v) in sigma_z.iter_mut().zip(&c.sigma_z) {
            *acc += v * *w;
        }
    }

    let c0 = coherence[0];
    if c0.norm_sqr() == T::zero() {
        return Err(Error::Singular("oracle coherence vanishes at t = 0"));
    }
    let rate = spec.qubit.omega0 + spec.lambda();
    let values = times
        .iter()
        .zip(&coherence)
        .map(|(&t, &c)| c / c0 * cis(rate * t))
        .collect();
    if !sigma_z.iter().all(|s| s.is_finite()) {
        return Err(Error::Eigensolver(format!(
            "non-finite population (discarded weight {})",
            to_f64(ensemble.discarded_weight)
        )));
    }
    Ok(OracleResult {
        series: CoherenceSeries {
            times,
            values,
            method: Method::ExactOracle,
            spec: spec.clone(),
        },
        sigma_z,
        discarded_weight: ensemble.discarded_weight,
        members: ensemble.members.len(),
    })
}
