use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::oracle::TruncationSpec;
use crate::scalar::{to_f64, Real};

/// Joint number state `|n_1, ..., n_N>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockProduct {
    pub occupations: Vec<usize>,
}

impl FockProduct {
    pub fn vacuum(n: usize) -> Self {
        Self {
            occupations: vec![0; n],
        }
    }

    pub fn new(occupations: Vec<usize>) -> Self {
        Self { occupations }
    }

    pub fn total(&self) -> usize {
        self.occupations.iter().sum()
    }

    pub fn n_modes(&self) -> usize {
        self.occupations.len()
    }
}

/// Fock-diagonal thermal weight `prod_j nbar_j^{n_j} / (nbar_j + 1)^{n_j + 1}`.
pub fn thermal_weight<T: Real>(nbar: &[T], fock: &FockProduct) -> T {
    nbar.iter()
        .zip(&fock.occupations)
        .fold(T::one(), |acc, (&nb, &n)| {
            acc * nb.powi(n as i32) / (nb + T::one()).powi(n as i32 + 1)
        })
}

/// Thermal mixture truncated to a weight budget.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnsemble<T> {
    /// Members in decreasing weight, weights renormalized to sum to one.
    pub members: Vec<(FockProduct, T)>,
    /// Thermal weight not represented by `members` (before renormalization).
    pub discarded_weight: T,
}

struct Candidate<T> {
    weight: T,
    fock: FockProduct,
}

impl<T: Real> PartialEq for Candidate<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Candidate<T> {}

impl<T: Real> PartialOrd for Candidate<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Candidate<T> {
    // Max-heap on weight; ties go to the lexicographically smaller product.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .partial_cmp(&other.weight)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.fock.cmp(&self.fock))
    }
}

/// Enumerates Fock products in decreasing thermal weight until at most
/// `trunc.weight_tol` of the total weight is left out.
pub fn enumerate_thermal_ensemble<T: Real>(
    spec: &ModelSpec<T>,
    trunc: &TruncationSpec,
) -> Result<ThermalEnsemble<T>> {
    spec.check()?;
    trunc.check()?;
    let nbar = spec.occupations();
    let n = spec.n_modes();
    let target = T::one() - crate::scalar::lit(trunc.weight_tol);

    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    let start = FockProduct::vacuum(n);
    seen.insert(start.clone());
    heap.push(Candidate {
        weight: thermal_weight(&nbar, &start),
        fock: start,
    });

    let mut members = Vec::new();
    let mut covered = T::zero();
    while covered < target {
        let Some(Candidate { weight, fock }) = heap.pop() else {
            return Err(Error::TruncationCap {
                cap: trunc.per_mode_cutoff_max,
                covered: to_f64(covered),
            });
        };
        for j in 0..n {
            let mut next = fock.clone();
            next.occupations[j] += 1;
            if next.occupations[j] > trunc.per_mode_cutoff_max {
                return Err(Error::TruncationCap {
                    cap: trunc.per_mode_cutoff_max,
                    covered: to_f64(covered),
                });
            }
            if seen.insert(next.clone()) {
                heap.push(Candidate {
                    weight: thermal_weight(&nbar, &next),
                    fock: next,
                });
            }
        }
        covered += weight;
        members.push((fock, weight));
    }

    let discarded_weight = (T::one() - covered).max(T::zero());
    for (_, w) in &mut members {
        *w /= covered;
    }
    Ok(ThermalEnsemble {
        members,
        discarded_weight,
    })
}
