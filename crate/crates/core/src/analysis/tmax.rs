use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::series::CoherenceSeries;

/// Samples required before the first minimum for the refinement to be trusted.
pub const MIN_SAMPLES_BEFORE_MIN: usize = 16;

/// End of the short-time monotonic decay window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmaxResult<T> {
    pub t_max: T,
    pub value_at_min: T,
    pub grid_resolution: T,
    /// Sample index of the discrete minimum (grid end when `no_recurrence`).
    pub index: usize,
    /// `|r|` never turned upward on this grid.
    pub no_recurrence: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

/// Index of the first strict local extremum at or after `from`; a plateau
/// counts when both neighbours lie on the same side, and its first sample wins.
fn next_extremum<T: Real>(a: &[T], from: usize, kind: Extremum) -> Option<usize> {
    let better = |x: T, y: T| match kind {
        Extremum::Min => x < y,
        Extremum::Max => x > y,
    };
    let mut i = from.max(1);
    while i + 1 < a.len() {
        if better(a[i], a[i - 1]) {
            let mut j = i;
            while j + 1 < a.len() && a[j + 1] == a[i] {
                j += 1;
            }
            if j + 1 < a.len() && better(a[i], a[j + 1]) {
                return Some(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    None
}

/// Vertex `(offset, value)` of the parabola through three equally spaced samples,
/// offset in units of the spacing relative to the middle sample.
fn parabola_vertex<T: Real>(left: T, mid: T, right: T) -> (T, T) {
    let b = (right - left) * lit(0.5);
    let c = (right + left) * lit(0.5) - mid;
    if c == T::zero() {
        return (T::zero(), mid);
    }
    let x = -b / (c * lit(2.0));
    let x = x.max(lit(-1.0)).min(T::one());
    (x, mid + b * x + c * x * x)
}

/// First local minimum of `|r(t)|`, refined by quadratic interpolation.
pub fn find_tmax<T: Real>(series: &CoherenceSeries<T>) -> Result<TmaxResult<T>> {
    let a = series.abs();
    tmax_of_modulus(&series.times, &a)
}

/// [`find_tmax`] on precomputed moduli.
pub fn tmax_of_modulus<T: Real>(times: &[T], a: &[T]) -> Result<TmaxResult<T>> {
    let n = a.len();
    if n < 3 || times.len() != n {
        return Err(Error::InvalidGrid(format!("need at least 3 samples, got {n}")));
    }
    let h = times[1] - times[0];
    match next_extremum(a, 1, Extremum::Min) {
        None => Ok(TmaxResult {
            t_max: times[n - 1],
            value_at_min: a[n - 1],
            grid_resolution: h,
            index: n - 1,
            no_recurrence: true,
        }),
        Some(i) if i < MIN_SAMPLES_BEFORE_MIN => Err(Error::GridTooCoarse {
            samples: i,
            needed: MIN_SAMPLES_BEFORE_MIN,
        }),
        Some(i) => {
            let (dx, v) = parabola_vertex(a[i - 1], a[i], a[i + 1]);
            Ok(TmaxResult {
                t_max: times[i] + dx * h,
                value_at_min: v.abs(),
                grid_resolution: h,
                index: i,
                no_recurrence: false,
            })
        }
    }
}

/// Strict local maxima of `|r|` after the first minimum, as `(t, |r|)`.
pub fn recurrence_markers<T: Real>(series: &CoherenceSeries<T>) -> Vec<(T, T)> {
    let a = series.abs();
    let Some(first_min) = next_extremum(&a, 1, Extremum::Min) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut i = first_min + 1;
    while let Some(k) = next_extremum(&a, i, Extremum::Max) {
        out.push((series.times[k], a[k]));
        i = k + 1;
    }
    out
}
