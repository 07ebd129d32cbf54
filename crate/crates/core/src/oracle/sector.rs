use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};

use super::ensemble::FockProduct;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitLevel {
    Ground,
    Excited,
}

/// Basis of one total-excitation block `E = [qubit excited] + sum_j n_j`.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub total_excitation: usize,
    pub states: Vec<(QubitLevel, FockProduct)>,
    index: HashMap<(QubitLevel, FockProduct), usize>,
}

/// Number of ways to place `total` quanta in `modes` modes.
fn compositions_count(total: usize, modes: usize) -> usize {
    // C(total + modes - 1, modes - 1), saturating.
    let (n, k) = (total + modes - 1, modes - 1);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All occupation vectors of `modes` modes summing to `total`, lexicographic.
fn compositions(total: usize, modes: usize) -> Vec<Vec<usize>> {
    if modes == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, modes - 1) {
            let mut v = Vec::with_capacity(modes);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Dimension of the sector with `total` excitations for `modes` modes.
pub fn sector_dimension(total: usize, modes: usize) -> usize {
    let ground = compositions_count(total, modes);
    let excited = if total == 0 {
        0
    } else {
        compositions_count(total - 1, modes)
    };
    ground.saturating_add(excited)
}

impl SectorBasis {
    pub fn new(total_excitation: usize, modes: usize, dim_cap: usize) -> Result<Self> {
        let dim = sector_dimension(total_excitation, modes);
        if dim > dim_cap {
            return Err(Error::SectorTooLarge {
                excitations: total_excitation,
                dim,
                cap: dim_cap,
            });
        }
        let mut states: Vec<(QubitLevel, FockProduct)> = compositions(total_excitation, modes)
            .into_iter()
            .map(|o| (QubitLevel::Ground, FockProduct::new(o)))
            .collect();
        if total_excitation > 0 {
            states.extend(
                compositions(total_excitation - 1, modes)
                    .into_iter()
                    .map(|o| (QubitLevel::Excited, FockProduct::new(o))),
            );
        }
        let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self {
            total_excitation,
            states,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, level: QubitLevel, fock: &FockProduct) -> Option<usize> {
        self.index.get(&(level, fock.clone())).copied()
    }

    /// Block of `H = w0/2 sz + sum w_j a_j^dag a_j + sum g_j (s+ a_j + s- a_j^dag)`.
    pub fn hamiltonian<T: Real>(&self, spec: &ModelSpec<T>) -> DMatrix<T> {
        let dim = self.dim();
        let half_w0 = spec.qubit.omega0 * lit(0.5);
        let mut h = DMatrix::zeros(dim, dim);
        for (i, (level, fock)) in self.states.iter().enumerate() {
            let field = spec
                .modes
                .iter()
                .zip(&fock.occupations)
                .fold(T::zero(), |acc, (m, &n)| acc + m.omega * from_usize(n));
            h[(i, i)] = field
                + match level {
                    QubitLevel::Ground => -half_w0,
                    QubitLevel::Excited => half_w0,
                };
            if *level == QubitLevel::Excited {
                // s- a_j^dag : |e, n> -> sqrt(n_j + 1) |g, n + 1_j>
                for (j, mode) in spec.modes.iter().enumerate() {
                    let mut target = fock.clone();
                    target.occupations[j] += 1;
                    let k = self
                        .index_of(QubitLevel::Ground, &target)
                        .expect("Jaynes-Cummings coupling left the excitation sector");
                    let amp = mode.g * from_usize::<T>(target.occupations[j]).sqrt();
                    h[(i, k)] = amp;
                    h[(k, i)] = amp;
                }
            }
        }
        h
    }
}

/// Diagonalized sector block, `H = U diag(energies) U^T`.
#[derive(Debug, Clone)]
pub struct SectorSpectrum<T: Real> {
    pub basis: SectorBasis,
    pub energies: Vec<T>,
    pub vectors: DMatrix<T>,
}

impl<T: Real> SectorSpectrum<T> {
    pub fn new(spec: &ModelSpec<T>, total_excitation: usize, dim_cap: usize) -> Result<Self> {
        let basis = SectorBasis::new(total_excitation, spec.n_modes(), dim_cap)?;
        let h = basis.hamiltonian(spec);
        let dim = basis.dim();
        let eig = SymmetricEigen::try_new(h, T::default_epsilon(), 0)
            .ok_or_else(|| Error::Eigensolver(format!("sector {total_excitation} ({dim} states)")))?;
        Ok(Self {
            basis,
            energies: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        })
    }
}
