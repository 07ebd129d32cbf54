use nalgebra::{Complex, ComplexField, DMatrix};

use crate::model::ModelSpec;
use crate::scalar::{cis, lit, sinc, Real};

/// Mode-mode coupling matrix `M(t)` of the effective Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix<T: Real> {
    pub t: T,
    pub entries: DMatrix<Complex<T>>,
}

/// One entry `m_jk(t)`.
///
/// Evaluated as `g_j g_k (Delta_j + Delta_k)/(Delta_j Delta_k) * t * e^{i theta t/2}
/// * sinc(theta t/2)` with `theta = omega_j - omega_k`, which has no `0/0` at
/// `theta = 0`.
pub fn m_entry<T: Real>(spec: &ModelSpec<T>, j: usize, k: usize, t: T) -> Complex<T> {
    let (mj, mk) = (&spec.modes[j], &spec.modes[k]);
    let (dj, dk) = (spec.detuning(j), spec.detuning(k));
    let amplitude = mj.g * mk.g * (dj + dk) / (dj * dk);
    let half_phase = (mj.omega - mk.omega) * t * lit(0.5);
    cis(half_phase) * (amplitude * t * sinc(half_phase))
}

/// The textbook form `i g_j g_k (Delta_j+Delta_k)/(Delta_j Delta_k) (1 - e^{i theta t})/theta`.
///
/// Only defined for `theta != 0`; loses accuracy as `theta t -> 0`.
pub fn m_entry_naive<T: Real>(spec: &ModelSpec<T>, j: usize, k: usize, t: T) -> Complex<T> {
    let (mj, mk) = (&spec.modes[j], &spec.modes[k]);
    let (dj, dk) = (spec.detuning(j), spec.detuning(k));
    let theta = mj.omega - mk.omega;
    let amplitude = mj.g * mk.g * (dj + dk) / (dj * dk);
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    i * (one - cis(theta * t)) * (amplitude / theta)
}

impl<T: Real> CouplingMatrix<T> {
    pub fn build(spec: &ModelSpec<T>, t: T) -> Self {
        let n = spec.n_modes();
        let entries = DMatrix::from_fn(n, n, |j, k| m_entry(spec, j, k, t));
        Self { t, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    /// `max_jk |m_jk - conj(m_kj)|`.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for j in 0..n {
            for k in 0..n {
                let d = (self.entries[(j, k)] - self.entries[(k, j)].conj()).modulus();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_entry(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.modulus())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

/// `M(t)` for `spec`.
pub fn build_m<T: Real>(spec: &ModelSpec<T>, t: T) -> CouplingMatrix<T> {
    CouplingMatrix::build(spec, t)
}
