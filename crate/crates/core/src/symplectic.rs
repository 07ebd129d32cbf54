//! Phase-space route for identical modes.
//!
//! With equal frequencies `M(t) = t * G`, `G_ij = 2 g_i g_j / (omega0 - omega)`,
//! and `r_N(t)` is the thermal average of the metaplectic operator generated by
//! `x^T H x / 2` with `H = G (+) G` on `x = (q_1..q_N, p_1..p_N)`. Its classical
//! propagator is `S = e^{J H t}` and
//!
//! ```text
//! r_N(t) = e^{i Lambda t} / sqrt(det(S + I) det(I/2 + i V C)),
//! C = J (I - S)(I + S)^{-1},   V = (nbar + 1/2) I.
//! ```
//!
//! `G` is a dyadic, so a single Householder reflection `O` mapping the coupling
//! vector onto the first axis diagonalizes it exactly. The determinant is
//! evaluated in that basis, where `I +- S_O` are built from half-angle
//! identities and stay accurate next to the zeros of `det(I + S)`. Inside a
//! window `|cos(Lambda t)| < 1e-6` around those zeros the identical-mode closed
//! form is used instead.

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

use crate::branch::continuous_inverse_sqrt;
use crate::effective::closed_form::degenerate_value;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{cis, lit, Real};
use crate::series::{CoherenceSeries, Method, TimeGrid};

/// Samples with `|cos(Lambda t)|` below this use the closed form.
pub const FALLBACK_WINDOW: f64 = 1e-6;

/// `H = G (+) G` together with the reflection that diagonalizes `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<T: Real> {
    pub g: DMatrix<T>,
    pub h: DMatrix<T>,
    /// Orthogonal, symmetric reflection with `O G O^T = diag(active, 0, ..., 0)`.
    pub reflector: DMatrix<T>,
    /// The non-null eigenvalue of `G`, equal to `2 Lambda_N`.
    pub active: T,
}

/// `S = e^{J H t}` and the symplectic form `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticPropagator<T: Real> {
    pub s: DMatrix<T>,
    pub j: DMatrix<T>,
}

/// Cayley parameter `C = J (I - S)(I + S)^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyParam<T: Real> {
    pub c: DMatrix<T>,
}

/// Standard symplectic form `[[0, I], [-I, 0]]` of size `2n`.
pub fn symplectic_form<T: Real>(n: usize) -> DMatrix<T> {
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            T::one()
        } else if r == c + n {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// Householder reflection `P` with `P x = alpha e_1`, `|alpha| = |x|`.
fn householder<T: Real>(x: &[T]) -> DMatrix<T> {
    let n = x.len();
    let norm = x.iter().fold(T::zero(), |a, &b| a + b * b).sqrt();
    if norm == T::zero() {
        return DMatrix::identity(n, n);
    }
    let alpha = if x[0] >= T::zero() { -norm } else { norm };
    let mut v: Vec<T> = x.to_vec();
    v[0] -= alpha;
    let vtv = v.iter().fold(T::zero(), |a, &b| a + b * b);
    if vtv == T::zero() {
        return DMatrix::identity(n, n);
    }
    let two: T = lit(2.0);
    DMatrix::from_fn(n, n, |r, c| {
        let id = if r == c { T::one() } else { T::zero() };
        id - two * v[r] * v[c] / vtv
    })
}

fn direct_sum<T: Real>(a: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (n, n)).copy_from(a);
    out
}

pub fn build_quadratic_form<T: Real>(spec: &ModelSpec<T>) -> Result<QuadraticForm<T>> {
    spec.check()?;
    if !spec.is_degenerate() {
        return Err(Error::MethodMismatch {
            method: "symplectic",
            requirement: "all mode frequencies equal",
        });
    }
    let n = spec.n_modes();
    let couplings: Vec<T> = spec.modes.iter().map(|m| m.g).collect();
    let delta = spec.detuning(0);
    let two: T = lit(2.0);
    let g = DMatrix::from_fn(n, n, |i, j| two * couplings[i] * couplings[j] / delta);
    let h = direct_sum(&g);
    let reflector = householder(&couplings);
    let active = two * couplings.iter().fold(T::zero(), |a, &c| a + c * c) / delta;
    Ok(QuadraticForm {
        g,
        h,
        reflector,
        active,
    })
}

impl<T: Real> QuadraticForm<T> {
    pub fn n_modes(&self) -> usize {
        self.g.nrows()
    }

    /// Angle `2 Lambda t` of the active phase-space rotation.
    fn angle(&self, t: T) -> T {
        self.active * t
    }

    /// `S_O` in the reflected basis.
    pub fn rotated_propagator(&self, t: T) -> DMatrix<T> {
        let n = self.n_modes();
        let (s, c) = self.angle(t).sin_cos();
        let mut out = DMatrix::identity(2 * n, 2 * n);
        out[(0, 0)] = c;
        out[(n, n)] = c;
        out[(0, n)] = s;
        out[(n, 0)] = -s;
        out
    }

    /// `(I + S_O, I - S_O)` from half-angle identities.
    fn rotated_shifts(&self, t: T) -> (DMatrix<T>, DMatrix<T>) {
        let n = self.n_modes();
        let two: T = lit(2.0);
        let (sh, ch) = (self.angle(t) * lit(0.5)).sin_cos();
        let sin_full = two * sh * ch;
        let mut plus = DMatrix::identity(2 * n, 2 * n) * two;
        let mut minus = DMatrix::zeros(2 * n, 2 * n);
        plus[(0, 0)] = two * ch * ch;
        plus[(n, n)] = two * ch * ch;
        plus[(0, n)] = sin_full;
        plus[(n, 0)] = -sin_full;
        minus[(0, 0)] = two * sh * sh;
        minus[(n, n)] = two * sh * sh;
        minus[(0, n)] = -sin_full;
        minus[(n, 0)] = sin_full;
        (plus, minus)
    }
}

/// `S(t) = (O (+) O)^T S_O (O (+) O)`.
pub fn propagator<T: Real>(qf: &QuadraticForm<T>, t: T) -> SymplecticPropagator<T> {
    let o2 = direct_sum(&qf.reflector);
    let s = o2.transpose() * qf.rotated_propagator(t) * &o2;
    SymplecticPropagator {
        s,
        j: symplectic_form(qf.n_modes()),
    }
}

impl<T: Real> SymplecticPropagator<T> {
    /// `max |S^T J S - J|`.
    pub fn symplecticity_defect(&self) -> T {
        (self.s.transpose() * &self.j * &self.s - &self.j).amax()
    }
}

fn solve_right<T: Real>(rhs: &DMatrix<T>, m: &DMatrix<T>) -> Option<DMatrix<T>> {
    // X m = rhs  <=>  m^T X^T = rhs^T
    m.transpose()
        .lu()
        .solve(&rhs.transpose())
        .map(|xt| xt.transpose())
}

impl<T: Real> CayleyParam<T> {
    pub fn from_propagator(p: &SymplecticPropagator<T>) -> Result<Self> {
        let n2 = p.s.nrows();
        let id = DMatrix::<T>::identity(n2, n2);
        let x = solve_right(&(&id - &p.s), &(&id + &p.s)).ok_or(Error::Singular("Cayley map (det(I + S) = 0)"))?;
        Ok(Self { c: &p.j * x })
    }
}

/// `det(S + I) det(I/2 + i (nbar + 1/2) C)` at time `t`, in the reflected basis.
pub fn metaplectic_denominator<T: Real>(qf: &QuadraticForm<T>, nbar: T, t: T) -> Result<Complex<T>> {
    let n2 = 2 * qf.n_modes();
    let (plus, minus) = qf.rotated_shifts(t);
    let x = solve_right(&minus, &plus).ok_or(Error::Singular("Cayley map (det(I + S) = 0)"))?;
    let c = symplectic_form::<T>(qf.n_modes()) * x;
    let det_plus = plus.determinant();
    let half: T = lit(0.5);
    let cov = nbar + half;
    let inner = DMatrix::from_fn(n2, n2, |r, k| {
        let re = if r == k { half } else { T::zero() };
        Complex::new(re, cov * c[(r, k)])
    });
    Ok(inner.determinant() * det_plus)
}

/// Phase-space route for identical modes at the spec temperature.
pub fn r_symplectic<T: Real>(spec: &ModelSpec<T>, grid: &TimeGrid<T>) -> Result<CoherenceSeries<T>> {
    let qf = build_quadratic_form(spec)?;
    let nbar = spec.thermal_occupation(0);
    let lambda = spec.lambda();
    let window: T = lit(FALLBACK_WINDOW);
    let times = grid.times();

    let denominators: Vec<Complex<T>> = times
        .par_iter()
        .map(|&t| {
            let lt = lambda * t;
            if lt.cos().abs() < window {
                // (e^{i L t} / r)^2 from the closed form.
                let d = cis(lt) / degenerate_value(lt, nbar);
                Ok(d * d)
            } else {
                metaplectic_denominator(&qf, nbar, t)
            }
        })
        .collect::<Result<_>>()?;

    let roots = continuous_inverse_sqrt(&times, &denominators)?;
    let mut values: Vec<Complex<T>> = times
        .iter()
        .zip(roots)
        .map(|(&t, root)| cis(lambda * t) * root)
        .collect();
    values[0] = Complex::new(T::one(), T::zero());
    Ok(CoherenceSeries {
        times,
        values,
        method: Method::Symplectic,
        spec: spec.clone(),
    })
}

/// Whether sample `t` falls in the closed-form fallback window.
pub fn in_fallback_window<T: Real>(spec: &ModelSpec<T>, t: T) -> bool {
    (spec.lambda() * t).cos().abs() < lit(FALLBACK_WINDOW)
}

/// `|det(I + S)|`; zero on the singular set of the Cayley map.
pub fn det_plus_identity<T: Real>(p: &SymplecticPropagator<T>) -> T {
    let n2 = p.s.nrows();
    (DMatrix::<T>::identity(n2, n2) + &p.s).determinant().abs()
}
