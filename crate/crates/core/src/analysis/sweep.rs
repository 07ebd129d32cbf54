use rayon::prelude::*;

use super::tmax::{find_tmax, TmaxResult};
use crate::effective::r_general;
use crate::error::Result;
use crate::model::ModelSpec;
use crate::scalar::Real;
use crate::series::TimeGrid;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub value: T,
    /// `Err` carries the reason the point is a hole.
    pub outcome: std::result::Result<TmaxResult<T>, String>,
}

impl<T: Copy> SweepPoint<T> {
    pub fn t_max(&self) -> Option<T> {
        self.outcome.as_ref().ok().map(|r| r.t_max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub param: String,
    pub points: Vec<SweepPoint<T>>,
}

impl<T: Copy> SweepResult<T> {
    pub fn values(&self) -> Vec<T> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn t_max(&self) -> Vec<Option<T>> {
        self.points.iter().map(SweepPoint::t_max).collect()
    }
}

fn evaluate<T: Real>(base: &ModelSpec<T>, path: &str, value: T, grid: &TimeGrid<T>) -> Result<TmaxResult<T>> {
    let spec = base.with_param(path, value)?;
    spec.diagnostics()?;
    find_tmax(&r_general(&spec, grid)?)
}

/// `t_max` of the general route for each value of the parameter at `path`.
///
/// Points that fail (invalid spec, regime violation, numerical failure) are
/// kept as holes; an unknown `path` is the only hard error.
pub fn sweep_tmax<T: Real>(
    base: &ModelSpec<T>,
    path: &str,
    values: &[T],
    grid: &TimeGrid<T>,
) -> Result<SweepResult<T>> {
    base.param(path)?;
    let points = values
        .par_iter()
        .map(|&value| SweepPoint {
            value,
            outcome: evaluate(base, path, value, grid).map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepResult {
        param: path.to_string(),
        points,
    })
}
