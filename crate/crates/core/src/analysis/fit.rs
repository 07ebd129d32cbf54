use nalgebra::ComplexField;

use super::tmax::find_tmax;
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::series::CoherenceSeries;

/// Default fit window as a fraction of `t_max`.
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.8;

/// What the decay model `e^{-2 gamma t}` is fitted against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitObjective {
    /// Least squares on `|r|` itself.
    #[default]
    Amplitude,
    /// Least squares on `log|r|` (a line through the origin).
    LogLinear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPolicy {
    pub window_fraction: f64,
    pub objective: FitObjective,
}

impl Default for FitPolicy {
    fn default() -> Self {
        Self {
            window_fraction: DEFAULT_WINDOW_FRACTION,
            objective: FitObjective::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<T> {
    pub gamma: T,
    /// Fit window `[0, t_fit]`.
    pub window: (T, T),
    /// RMS residual in the space of the objective.
    pub rms_residual: T,
    pub samples: usize,
    pub objective: FitObjective,
}

/// Fits `e^{-2 gamma t}` to `|r|` on `[0, window_fraction * t_max]`.
pub fn fit_stmd<T: Real>(series: &CoherenceSeries<T>, policy: &FitPolicy) -> Result<FitResult<T>> {
    if !(policy.window_fraction > 0.0 && policy.window_fraction.is_finite()) {
        return Err(Error::Config(format!(
            "fit window fraction must be positive, got {}",
            policy.window_fraction
        )));
    }
    let tmax = find_tmax(series)?;
    let t_fit = tmax.t_max * lit(policy.window_fraction);
    fit_modulus(&series.times, &series.abs(), t_fit, policy.objective)
}

/// Fits `a(t) ~ e^{-2 gamma t}` using the samples with `t <= t_fit`.
pub fn fit_modulus<T: Real>(times: &[T], a: &[T], t_fit: T, objective: FitObjective) -> Result<FitResult<T>> {
    let pts: Vec<(T, T)> = times
        .iter()
        .zip(a)
        .take_while(|(&t, _)| t <= t_fit)
        .map(|(&t, &v)| (t, v))
        .collect();
    if pts.len() < 2 {
        return Err(Error::FitFailed(format!(
            "fit window [0, {}] holds fewer than two samples",
            to_f64(t_fit)
        )));
    }
    if let Some(&(t, _)) = pts.iter().find(|(_, v)| !(*v > T::zero())) {
        return Err(Error::ZeroInFitWindow(to_f64(t)));
    }

    let two: T = lit(2.0);
    let (stt, stl) = pts
        .iter()
        .fold((T::zero(), T::zero()), |(stt, stl), &(t, v)| (stt + t * t, stl + t * v.ln()));
    if stt == T::zero() {
        return Err(Error::FitFailed("fit window collapses to t = 0".into()));
    }
    let log_gamma = -stl / (two * stt);
    let count = from_usize::<T>(pts.len());

    let (gamma, ss) = match objective {
        FitObjective::LogLinear => {
            let ss = pts.iter().fold(T::zero(), |acc, &(t, v)| {
                let r = v.ln() + two * log_gamma * t;
                acc + r * r
            });
            (log_gamma, ss)
        }
        FitObjective::Amplitude => amplitude_fit(&pts, log_gamma)?,
    };
    Ok(FitResult {
        gamma: gamma.max(T::zero()),
        window: (T::zero(), t_fit),
        rms_residual: (ss / count).sqrt(),
        samples: pts.len(),
        objective,
    })
}

fn amplitude_ss<T: Real>(pts: &[(T, T)], gamma: T) -> T {
    let two: T = lit(2.0);
    pts.iter().fold(T::zero(), |acc, &(t, v)| {
        let r = (-two * gamma * t).exp() - v;
        acc + r * r
    })
}

/// One-parameter Gauss–Newton with step halving, started from the log fit.
fn amplitude_fit<T: Real>(pts: &[(T, T)], start: T) -> Result<(T, T)> {
    let two: T = lit(2.0);
    let mut gamma = start;
    let mut ss = amplitude_ss(pts, gamma);
    for _ in 0..200 {
        let (num, den) = pts.iter().fold((T::zero(), T::zero()), |(num, den), &(t, v)| {
            let model = (-two * gamma * t).exp();
            let d = -two * t * model;
            (num + (model - v) * d, den + d * d)
        });
        if den == T::zero() {
            break;
        }
        let mut step = -num / den;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = gamma + step;
            let trial_ss = amplitude_ss(pts, trial);
            if trial_ss <= ss {
                gamma = trial;
                ss = trial_ss;
                accepted = true;
                break;
            }
            step *= lit(0.5);
        }
        let scale = gamma.abs();
        if !accepted || step.abs() <= T::default_epsilon() * scale {
            break;
        }
    }
    if !gamma.is_finite() {
        return Err(Error::FitFailed("amplitude fit diverged".into()));
    }
    Ok((gamma, ss))
}

/// `|r(t)| - e^{-2 gamma t}` per sample.
pub fn deviation_series<T: Real>(series: &CoherenceSeries<T>, gamma: T) -> Vec<T> {
    let two: T = lit(2.0);
    series
        .times
        .iter()
        .zip(&series.values)
        .map(|(&t, z)| z.modulus() - (-two * gamma * t).exp())
        .collect()
}
