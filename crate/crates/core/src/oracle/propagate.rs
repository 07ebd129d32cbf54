use nalgebra::{Complex, DMatrix};

use super::ensemble::FockProduct;
use super::sector::{QubitLevel, SectorSpectrum};
use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, lit, Real};

/// Per-time contributions of one pure initial state `(|g> + |e>)/sqrt(2) |n>`.
#[derive(Debug, Clone)]
pub struct PureContribution<T: Real> {
    /// `<e| rho_S |g>`.
    pub coherence: Vec<Complex<T>>,
    /// `<sigma_z>`.
    pub sigma_z: Vec<T>,
}

/// Largest `|U^T U - I|` entry the oracle tolerates in a sector eigenbasis.
pub fn orthogonality_defect<T: Real>(u: &DMatrix<T>) -> T {
    let g = u.transpose() * u;
    let mut worst = T::zero();
    for i in 0..g.nrows() {
        for k in 0..g.ncols() {
            let target = if i == k { T::one() } else { T::zero() };
            worst = worst.max((g[(i, k)] - target).abs());
        }
    }
    worst
}

/// Amplitudes `a_b(t) = sum_k U_bk U_sk e^{-i E_k t}` of a state started in basis state `s`.
struct Evolver<'a, T: Real> {
    spectrum: &'a SectorSpectrum<T>,
    /// Column `k` of the overlap: `U_bk * U_sk`.
    weights: DMatrix<T>,
}

impl<'a, T: Real> Evolver<'a, T> {
    fn new(spectrum: &'a SectorSpectrum<T>, start: usize) -> Self {
        let u = &spectrum.vectors;
        let dim = u.nrows();
        let weights = DMatrix::from_fn(dim, dim, |b, k| u[(b, k)] * u[(start, k)]);
        Self { spectrum, weights }
    }

    fn amplitudes(&self, t: T, out: &mut Vec<Complex<T>>) {
        let dim = self.weights.nrows();
        out.clear();
        out.resize(dim, Complex::new(T::zero(), T::zero()));
        for (k, &e) in self.spectrum.energies.iter().enumerate() {
            let ph = cis(-e * t);
            for b in 0..dim {
                out[b] += ph * self.weights[(b, k)];
            }
        }
    }

    fn inversion(&self, amps: &[Complex<T>]) -> T {
        self.spectrum
            .basis
            .states
            .iter()
            .zip(amps)
            .fold(T::zero(), |acc, ((level, _), a)| match level {
                QubitLevel::Excited => acc + a.norm_sqr(),
                QubitLevel::Ground => acc - a.norm_sqr(),
            })
    }
}

/// Evolves `(|g> + |e>)/sqrt(2) |n>` with the full Hamiltonian.
///
/// `lower` must be the sector with `|n|` excitations and `upper` the one with
/// `|n| + 1`.
pub fn propagate_pure<T: Real>(
    lower: &SectorSpectrum<T>,
    upper: &SectorSpectrum<T>,
    fock: &FockProduct,
    times: &[T],
) -> Result<PureContribution<T>> {
    let e = fock.total();
    if lower.basis.total_excitation != e || upper.basis.total_excitation != e + 1 {
        return Err(Error::Singular("sector pair does not match the initial product"));
    }
    let tol: T = lit(1e-10);
    for s in [lower, upper] {
        let defect = orthogonality_defect(&s.vectors);
        if defect > tol * from_usize(s.basis.dim()) {
            return Err(Error::Eigensolver(format!(
                "sector {} eigenbasis not orthogonal (defect {})",
                s.basis.total_excitation,
                crate::scalar::to_f64(defect)
            )));
        }
    }
    let g_start = lower
        .basis
        .index_of(QubitLevel::Ground, fock)
        .expect("ground product missing from its sector");
    let e_start = upper
        .basis
        .index_of(QubitLevel::Excited, fock)
        .expect("excited product missing from its sector");

    // Environment configurations shared by |g, m> in `lower` and |e, m> in `upper`.
    let pairs: Vec<(usize, usize)> = lower
        .basis
        .states
        .iter()
        .enumerate()
        .filter(|(_, (level, _))| *level == QubitLevel::Ground)
        .map(|(i, (_, m))| {
            let k = upper
                .basis
                .index_of(QubitLevel::Excited, m)
                .expect("missing excited partner");
            (i, k)
        })
        .collect();

    let phi = Evolver::new(lower, g_start);
    let chi = Evolver::new(upper, e_start);
    let half: T = lit(0.5);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut coherence = Vec::with_capacity(times.len());
    let mut sigma_z = Vec::with_capacity(times.len());
    for &t in times {
        phi.amplitudes(t, &mut a);
        chi.amplitudes(t, &mut b);
        let c = pairs
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &(i, k)| acc + b[k] * a[i].conj());
        coherence.push(c * half);
        sigma_z.push((phi.inversion(&a) + chi.inversion(&b)) * half);
    }
    Ok(PureContribution { coherence, sigma_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelSpec;

    #[test]
    fn vacuum_matches_single_excitation_rabi_problem() {
        // One mode, |g,0> is stationary and |e,0> mixes with |g,1>.
        let spec = ModelSpec::<f64>::from_lists(&[0.01], &[0.8], 0.0);
        let lower = SectorSpectrum::new(&spec, 0, 10).unwrap();
        let upper = SectorSpectrum::new(&spec, 1, 10).unwrap();
        let times = [0.0, 50.0, 400.0];
        let c = propagate_pure(&lower, &upper, &FockProduct::vacuum(1), &times).unwrap();
        let (g, delta) = (0.01_f64, 0.2_f64);
        let omega = (delta * delta / 4.0 + g * g).sqrt();
        for (i, &t) in times.iter().enumerate() {
            // <e,0|e^{-iHt}|e,0> = e^{-i(w1/2) t}(cos W t - i (delta/2W) sin W t).
            let amp_e = cis(-0.8 * t / 2.0)
                * Complex::new((omega * t).cos(), -(delta / (2.0 * omega)) * (omega * t).sin());
            let amp_g = cis(0.5 * t);
            let expect = amp_e * amp_g.conj() * 0.5;
            assert!((c.coherence[i] - expect).norm() < 1e-12, "t={t}");
        }
        assert!((c.sigma_z[0] - 0.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_sectors_rejected() {
        let spec = ModelSpec::<f64>::from_lists(&[0.01, 0.01], &[0.8, 0.7], 1.0);
        let s1 = SectorSpectrum::new(&spec, 1, 10).unwrap();
        let s2 = SectorSpectrum::new(&spec, 2, 10).unwrap();
        assert!(propagate_pure(&s1, &s2, &FockProduct::vacuum(2), &[0.0]).is_err());
    }
}
