//! Continuous square roots along a time grid.
//!
//! Determinant-based formulas give `r = 1/sqrt(D(t))` with no branch rule.
//! The branch is fixed by unwrapping `arg D` sample to sample, anchored at the
//! principal argument of the first sample.

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::scalar::{cis, lit, to_f64, wrap_angle, Real};

/// Wrapped phase steps larger than this are treated as unresolved.
pub const MAX_PHASE_STEP: f64 = std::f64::consts::FRAC_PI_2;

/// Unwrapped `arg` of `values` along `times`.
pub fn unwrap_phase<T: Real>(times: &[T], values: &[Complex<T>]) -> Result<Vec<T>> {
    let limit: T = lit(MAX_PHASE_STEP);
    let mut out = Vec::with_capacity(values.len());
    let mut prev_raw = T::zero();
    let mut acc = T::zero();
    for (i, z) in values.iter().enumerate() {
        if *z == Complex::new(T::zero(), T::zero()) {
            return Err(Error::Singular("branch tracking (determinant vanished)"));
        }
        let raw = z.argument();
        if i == 0 {
            acc = raw;
        } else {
            let step = wrap_angle(raw - prev_raw);
            if step.abs() > limit {
                return Err(Error::BranchTracking {
                    t_prev: to_f64(times[i - 1]),
                    t: to_f64(times[i]),
                    step: to_f64(step),
                });
            }
            acc += step;
        }
        prev_raw = raw;
        out.push(acc);
    }
    Ok(out)
}

/// `values^{-1/2}` with the branch continued along the grid.
pub fn continuous_inverse_sqrt<T: Real>(times: &[T], values: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let phases = unwrap_phase(times, values)?;
    let half: T = lit(0.5);
    Ok(values
        .iter()
        .zip(phases)
        .map(|(z, phi)| cis(-phi * half) * (T::one() / z.modulus().sqrt()))
        .collect())
}

/// Largest wrapped `|Delta arg|` between adjacent samples.
pub fn max_phase_step<T: Real>(values: &[Complex<T>]) -> T {
    values
        .windows(2)
        .map(|w| wrap_angle(w[1].argument() - w[0].argument()).abs())
        .fold(T::zero(), |acc, s| if s > acc { s } else { acc })
}
