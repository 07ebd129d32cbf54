//! Scalar abstraction shared by every engine.
//!
//! All physics is written against [`Real`], which is satisfied by `f32` and
//! `f64`. Tolerances quoted throughout the crate assume `f64`.

use nalgebra::{Complex, RealField};

/// Real scalar usable by the engines.
///
/// This trait gets implemented automatically for every `RealField` that is
/// also `Copy` and thread-safe.
pub trait Real: RealField + Copy + Send + Sync + 'static {}

impl<T: RealField + Copy + Send + Sync + 'static> Real for T {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Converts a count into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    nalgebra::convert(n as f64)
}

/// Lossy conversion to `f64`, used for reporting and serialization.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    nalgebra::try_convert(x).unwrap_or(f64::NAN)
}

/// `e^{i phase}`.
#[inline]
pub fn cis<T: Real>(phase: T) -> Complex<T> {
    let (s, c) = phase.sin_cos();
    Complex::new(c, s)
}

/// `sin(x)/x` with the removable singularity filled in.
pub fn sinc<T: Real>(x: T) -> T {
    // Below this the Taylor series 1 - x^2/6 + x^4/120 is exact to rounding.
    if x.abs() < lit(1e-4) {
        let x2 = x * x;
        T::one() - x2 / lit(6.0) + x2 * x2 / lit(120.0)
    } else {
        x.sin() / x
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle<T: Real>(x: T) -> T {
    let two_pi = T::two_pi();
    let mut y = x % two_pi;
    if y > T::pi() {
        y -= two_pi;
    } else if y <= -T::pi() {
        y += two_pi;
    }
    y
}
