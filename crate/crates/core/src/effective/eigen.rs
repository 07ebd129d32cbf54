use nalgebra::{Complex, ComplexField, DMatrix, SymmetricEigen};

use super::coupling::CouplingMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Spectral decomposition `V^dagger M V = diag(epsilons)`.
///
/// Gauge: eigenvalues in descending order; each column of `v` rotated so that
/// its largest-magnitude entry is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeEigenSystem<T: Real> {
    pub epsilons: Vec<T>,
    pub v: DMatrix<Complex<T>>,
}

pub fn eigensystem<T: Real>(m: &CouplingMatrix<T>) -> Result<ModeEigenSystem<T>> {
    ModeEigenSystem::of_hermitian(&m.entries)
}

impl<T: Real> ModeEigenSystem<T> {
    pub fn of_hermitian(h: &DMatrix<Complex<T>>) -> Result<Self> {
        let n = h.nrows();
        let eig = SymmetricEigen::try_new(h.clone(), T::default_epsilon(), 0)
            .ok_or_else(|| Error::Eigensolver(format!("{n}x{n} Hermitian matrix did not converge")))?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let epsilons = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut v = DMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            let column = eig.eigenvectors.column(src);
            let mut pivot = 0;
            let mut best = T::zero();
            for (row, z) in column.iter().enumerate() {
                let a = z.modulus();
                if a > best {
                    best = a;
                    pivot = row;
                }
            }
            let phase = if best > T::zero() {
                column[pivot].conj() / Complex::new(best, T::zero())
            } else {
                Complex::new(T::one(), T::zero())
            };
            for row in 0..n {
                v[(row, col)] = column[row] * phase;
            }
            if best > T::zero() {
                v[(pivot, col)] = Complex::new(best, T::zero());
            }
        }
        Ok(Self { epsilons, v })
    }

    pub fn dim(&self) -> usize {
        self.epsilons.len()
    }

    /// `max |(V^dagger V - I)_jk|`.
    pub fn unitarity_defect(&self) -> T {
        let n = self.dim();
        let g = self.v.adjoint() * &self.v;
        let mut worst = T::zero();
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { T::one() } else { T::zero() };
                let d = (g[(j, k)] - Complex::new(target, T::zero())).modulus();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Largest off-diagonal modulus of `V^dagger M V`, and the worst diagonal
    /// mismatch against `epsilons`.
    pub fn diagonalization_residual(&self, m: &DMatrix<Complex<T>>) -> (T, T) {
        let d = self.v.adjoint() * m * &self.v;
        let n = self.dim();
        let (mut off, mut diag) = (T::zero(), T::zero());
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    let e = (d[(j, j)] - Complex::new(self.epsilons[j], T::zero())).modulus();
                    if e > diag {
                        diag = e;
                    }
                } else if d[(j, k)].modulus() > off {
                    off = d[(j, k)].modulus();
                }
            }
        }
        (off, diag)
    }

    /// `V diag(e^{-i eps}) V^dagger`.
    pub fn propagator(&self) -> DMatrix<Complex<T>> {
        let n = self.dim();
        let phases: Vec<Complex<T>> = self.epsilons.iter().map(|&e| crate::scalar::cis(-e)).collect();
        DMatrix::from_fn(n, n, |j, k| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, l| {
                acc + self.v[(j, l)] * phases[l] * self.v[(k, l)].conj()
            })
        })
    }

    /// Applies a permutation of the eigenpairs and per-column phases; the
    /// physics must not notice.
    pub fn regauged(&self, order: &[usize], phases: &[T]) -> Self {
        let n = self.dim();
        let mut v = DMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            let p = crate::scalar::cis(phases[col]);
            for row in 0..n {
                v[(row, col)] = self.v[(row, src)] * p;
            }
        }
        Self {
            epsilons: order.iter().map(|&i| self.epsilons[i]).collect(),
            v,
        }
    }

    pub fn trace(&self) -> T {
        self.epsilons.iter().fold(T::zero(), |a, &b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::coupling::build_m;
    use crate::model::ModelSpec;

    #[test]
    fn degenerate_dyadic_has_one_nonzero_eigenvalue() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02, 0.015], &[0.8; 3], 1.0);
        let t = 300.0;
        let eig = eigensystem(&build_m(&spec, t)).unwrap();
        // The dyadic 2 g g^T t / Delta has eigenvalue 2 Lambda_N t = tr M.
        assert!((eig.epsilons[0] - 2.0 * spec.lambda() * t).abs() < 1e-14);
        for &e in &eig.epsilons[1..] {
            assert!(e.abs() < 1e-15);
        }
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 1.0);
        let eig = eigensystem(&build_m(&spec, 0.0)).unwrap();
        assert_eq!(eig.epsilons, vec![0.0, 0.0]);
        assert_eq!(eig.v, DMatrix::identity(2, 2));
    }

    #[test]
    fn pair_eigenvalues_sum_to_trace() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 1.0);
        let m = build_m(&spec, 1234.5);
        let eig = eigensystem(&m).unwrap();
        assert!(eig.epsilons[0] >= eig.epsilons[1]);
        let want = 2.0 * spec.lambda() * 1234.5;
        assert!((eig.trace() - want).abs() < 1e-12 * want);
        assert!(eig.unitarity_defect() < 1e-12);
        let (off, diag) = eig.diagonalization_residual(&m.entries);
        let scale = m.max_entry();
        assert!(off <= 1e-12 * scale && diag <= 1e-12 * scale);
    }

    #[test]
    fn gauge_pivot_is_real_positive() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02, 0.01], &[0.8, 0.7, 0.75], 0.5);
        let eig = eigensystem(&build_m(&spec, 800.0)).unwrap();
        for col in 0..3 {
            let c = eig.v.column(col);
            let (pivot, _) = c
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            assert!(c[pivot].re > 0.0);
            assert!(c[pivot].im.abs() < 1e-15);
        }
    }
}
