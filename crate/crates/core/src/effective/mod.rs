//! Effective (second-order Magnus) description of the dispersive coupling.
//!
//! The environment enters only through `r_N(t) = Tr[rho_E e^{-i M(t)}]`, where
//! `M(t) = sum_jk m_jk(t) a_j^dagger a_k`. Three independent evaluations live
//! here: the general determinant route, the identical-mode closed form, and the
//! two-mode closed form.

pub mod closed_form;
pub mod coupling;
pub mod eigen;
pub mod gaussian;

pub use closed_form::{r_degenerate, r_pair};
pub use coupling::{build_m, m_entry, CouplingMatrix};
pub use eigen::{eigensystem, ModeEigenSystem};
pub use gaussian::{r_general, r_general_with_occupations, GaussianDetMatrix};

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{cis, lit, Real};
use crate::series::TimeGrid;

/// Qubit off-diagonal element `rho_01(t) = rho_01(0) e^{-i Lambda_N t} r_N(t)`.
///
/// Phase convention: this is the element that picks up `e^{-i Lambda_N t}`,
/// i.e. `<excited| rho |ground>` in the interaction picture.
pub fn coherence_offdiagonal<T: Real>(
    rho01_initial: Complex<T>,
    spec: &ModelSpec<T>,
    grid: &TimeGrid<T>,
) -> Result<Vec<Complex<T>>> {
    let bound: T = lit(0.5 + 1e-12);
    if rho01_initial.modulus() > bound {
        return Err(Error::Config(format!(
            "|rho01(0)| must not exceed 1/2 (got {})",
            crate::scalar::to_f64(rho01_initial.modulus())
        )));
    }
    let lambda = spec.lambda();
    let r = r_general(spec, grid)?;
    Ok(r.times
        .iter()
        .zip(&r.values)
        .map(|(&t, &v)| rho01_initial * cis(-lambda * t) * v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offdiagonal_cases() {
        let grid = TimeGrid::new(2000.0, 201).unwrap();
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 1.0);
        let zero = coherence_offdiagonal(Complex::new(0.0, 0.0), &spec, &grid).unwrap();
        assert!(zero.iter().all(|z| z.norm() == 0.0));

        let rho0 = Complex::new(0.3, -0.2);
        let r = r_general(&spec, &grid).unwrap();
        let rho = coherence_offdiagonal(rho0, &spec, &grid).unwrap();
        for (a, b) in rho.iter().zip(&r.values) {
            assert!((a.norm() - rho0.norm() * b.norm()).abs() < 1e-15);
        }

        let cold = ModelSpec::<f64>::from_lists(&[0.01, 0.02], &[0.8, 0.7], 0.0);
        let rho = coherence_offdiagonal(rho0, &cold, &grid).unwrap();
        let lambda = cold.lambda();
        for (i, z) in rho.iter().enumerate() {
            let t = grid.time(i);
            assert!((z - rho0 * cis(-lambda * t)).norm() < 1e-15);
        }

        assert!(coherence_offdiagonal(Complex::new(0.6, 0.0), &spec, &grid).is_err());
    }
}
