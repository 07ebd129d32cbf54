//! General route: `r_N(t)` from the determinant of the `2N x 2N` Gaussian
//! integral matrix.
//!
//! The textbook matrix `A` has diagonal blocks `y_j I` with
//! `y_j = (nbar_j + 1)/nbar_j - sum_l e^{-i eps_l} |V_jl|^2`, and off-diagonal
//! blocks `W_jk = [[-u, -v], [v, -u]]`, with
//!
//! ```text
//! u_jk = sum_l e^{-i eps_l} Re(V_jl^* V_kl)
//! v_jk = sum_l e^{-i eps_l} Im(V_jl^* V_kl)
//! ```
//!
//! and `r = 1 / (prod_j nbar_j * sqrt(det A))`. Both the prefactor and `y_j`
//! blow up as `nbar_j -> 0`, so we work with the rescaled matrix `A~` whose
//! row-block `j` is multiplied by `nbar_j`: `det A~ = prod nbar_j^2 det A` and
//! `r = det(A~)^{-1/2}`, with every entry bounded at low temperature.

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

use super::coupling::build_m;
use super::eigen::{eigensystem, ModeEigenSystem};
use crate::branch::continuous_inverse_sqrt;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{cis, Real};
use crate::series::{CoherenceSeries, Method, TimeGrid};

/// The Gaussian-integral matrix in block form.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianDetMatrix<T: Real> {
    pub nbar: Vec<T>,
    /// Row-block-rescaled matrix `A~`.
    pub a_rescaled: DMatrix<Complex<T>>,
}

impl<T: Real> GaussianDetMatrix<T> {
    pub fn assemble(nbar: &[T], eig: &ModeEigenSystem<T>) -> Self {
        let n = eig.dim();
        debug_assert_eq!(nbar.len(), n);
        let zero = Complex::new(T::zero(), T::zero());
        let phases: Vec<Complex<T>> = eig.epsilons.iter().map(|&e| cis(-e)).collect();
        let v = &eig.v;

        let mut a = DMatrix::from_element(2 * n, 2 * n, zero);
        for j in 0..n {
            let diag_sum = (0..n).fold(zero, |acc, l| acc + phases[l] * v[(j, l)].norm_sqr());
            let y = Complex::new(nbar[j] + T::one(), T::zero()) - diag_sum * nbar[j];
            a[(2 * j, 2 * j)] = y;
            a[(2 * j + 1, 2 * j + 1)] = y;
            for k in (0..n).filter(|&k| k != j) {
                let (mut u, mut w) = (zero, zero);
                for l in 0..n {
                    let overlap = v[(j, l)].conj() * v[(k, l)];
                    u += phases[l] * overlap.re;
                    w += phases[l] * overlap.im;
                }
                let (u, w) = (u * nbar[j], w * nbar[j]);
                a[(2 * j, 2 * k)] = -u;
                a[(2 * j, 2 * k + 1)] = -w;
                a[(2 * j + 1, 2 * k)] = w;
                a[(2 * j + 1, 2 * k + 1)] = -u;
            }
        }
        Self {
            nbar: nbar.to_vec(),
            a_rescaled: a,
        }
    }

    /// The unscaled matrix `A`, defined only when every `nbar_j > 0`.
    pub fn unscaled(&self) -> Option<DMatrix<Complex<T>>> {
        if self.nbar.iter().any(|&x| x <= T::zero()) {
            return None;
        }
        let mut a = self.a_rescaled.clone();
        for (j, &nb) in self.nbar.iter().enumerate() {
            let inv = T::one() / nb;
            for row in [2 * j, 2 * j + 1] {
                for c in 0..a.ncols() {
                    a[(row, c)] *= inv;
                }
            }
        }
        Some(a)
    }

    pub fn det(&self) -> Complex<T> {
        self.a_rescaled.clone().determinant()
    }
}

/// `det A~(t)` for every grid time, computed in parallel.
pub fn det_series<T: Real>(spec: &ModelSpec<T>, nbar: &[T], grid: &TimeGrid<T>) -> Result<Vec<Complex<T>>> {
    if nbar.len() != spec.n_modes() {
        return Err(Error::OccupationLength {
            expected: spec.n_modes(),
            got: nbar.len(),
        });
    }
    grid.times()
        .par_iter()
        .map(|&t| {
            let eig = eigensystem(&build_m(spec, t))?;
            Ok(GaussianDetMatrix::assemble(nbar, &eig).det())
        })
        .collect()
}

/// `r_N(t)` for per-mode occupations `nbar`.
pub fn r_general_with_occupations<T: Real>(
    spec: &ModelSpec<T>,
    nbar: &[T],
    grid: &TimeGrid<T>,
) -> Result<CoherenceSeries<T>> {
    spec.check()?;
    let times = grid.times();
    let values = if nbar.iter().all(|&x| x == T::zero()) {
        if nbar.len() != spec.n_modes() {
            return Err(Error::OccupationLength {
                expected: spec.n_modes(),
                got: nbar.len(),
            });
        }
        vec![Complex::new(T::one(), T::zero()); times.len()]
    } else {
        let dets = det_series(spec, nbar, grid)?;
        let mut values = continuous_inverse_sqrt(&times, &dets)?;
        values[0] = Complex::new(T::one(), T::zero());
        values
    };
    Ok(CoherenceSeries {
        times,
        values,
        method: Method::General,
        spec: spec.clone(),
    })
}

/// `r_N(t)` with occupations derived from the spec temperature.
pub fn r_general<T: Real>(spec: &ModelSpec<T>, grid: &TimeGrid<T>) -> Result<CoherenceSeries<T>> {
    r_general_with_occupations(spec, &spec.occupations(), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::coupling::build_m;

    fn eig_at(spec: &ModelSpec<f64>, t: f64) -> ModeEigenSystem<f64> {
        eigensystem(&build_m(spec, t)).unwrap()
    }

    #[test]
    fn off_diagonal_blocks_have_w_structure() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02, 0.015], &[0.8, 0.7, 0.75], 1.0);
        let g = GaussianDetMatrix::assemble(&spec.occupations(), &eig_at(&spec, 900.0));
        let a = &g.a_rescaled;
        for j in 0..3 {
            assert_eq!(a[(2 * j, 2 * j + 1)], Complex::new(0.0, 0.0));
            assert_eq!(a[(2 * j, 2 * j)], a[(2 * j + 1, 2 * j + 1)]);
            for k in (0..3).filter(|&k| k != j) {
                assert_eq!(a[(2 * j, 2 * k)], a[(2 * j + 1, 2 * k + 1)]);
                assert_eq!(a[(2 * j, 2 * k + 1)], -a[(2 * j + 1, 2 * k)]);
            }
        }
        // Unscaled lower blocks are the transposes of the upper ones.
        let a = g.unscaled().unwrap();
        for j in 0..3 {
            for k in (j + 1)..3 {
                let upper = a.view((2 * j, 2 * k), (2, 2)).into_owned();
                let lower = a.view((2 * k, 2 * j), (2, 2)).into_owned();
                assert!((upper.transpose() - lower).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rescaled_det_relates_to_unscaled() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 0.5);
        let nbar = spec.occupations();
        let g = GaussianDetMatrix::assemble(&nbar, &eig_at(&spec, 1500.0));
        let scale: f64 = nbar.iter().map(|x| x * x).product();
        let unscaled = g.unscaled().unwrap().determinant();
        assert!((g.det() - unscaled * scale).norm() < 1e-12 * g.det().norm());
    }

    #[test]
    fn zero_temperature_is_identically_one() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 0.0).validate().unwrap();
        let grid = TimeGrid::new(3000.0, 301).unwrap();
        let r = r_general(&spec, &grid).unwrap();
        assert!(r.values.iter().all(|z| *z == Complex::new(1.0, 0.0)));
        let g = GaussianDetMatrix::assemble(&[0.0, 0.0], &eig_at(&spec, 1000.0));
        assert!(g.unscaled().is_none());
        assert!((g.det() - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrong_occupation_length_is_an_error() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 1.0);
        let grid = TimeGrid::new(10.0, 11).unwrap();
        assert!(matches!(
            r_general_with_occupations(&spec, &[0.5], &grid),
            Err(Error::OccupationLength { .. })
        ));
    }
}
