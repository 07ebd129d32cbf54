//! Closed forms: identical modes, and the two-mode formula.

use nalgebra::{Complex, ComplexField};

use super::coupling::m_entry;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{cis, lit, sinc, Real};
use crate::series::{CoherenceSeries, Method, TimeGrid};

/// `r_N(t) = e^{i L t} / (cos(L t) + i (2 nbar + 1) sin(L t))` with `L = Lambda_N`.
pub fn degenerate_value<T: Real>(lambda_t: T, nbar: T) -> Complex<T> {
    let (s, c) = lambda_t.sin_cos();
    let k = lit::<T>(2.0) * nbar + T::one();
    cis(lambda_t) / Complex::new(c, k * s)
}

/// Identical-mode route; rejects specs whose frequencies differ.
pub fn r_degenerate<T: Real>(spec: &ModelSpec<T>, grid: &TimeGrid<T>) -> Result<CoherenceSeries<T>> {
    spec.check()?;
    if !spec.is_degenerate() {
        return Err(Error::MethodMismatch {
            method: "degenerate",
            requirement: "all mode frequencies equal",
        });
    }
    let lambda = spec.lambda();
    let nbar = spec.thermal_occupation(0);
    let times = grid.times();
    let values = times.iter().map(|&t| degenerate_value(lambda * t, nbar)).collect();
    Ok(CoherenceSeries {
        times,
        values,
        method: Method::Degenerate,
        spec: spec.clone(),
    })
}

/// Ingredients of the two-mode formula at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTerms<T> {
    pub eps_plus: T,
    pub eps_minus: T,
    pub v11_sq: T,
    pub v12_sq: T,
}

/// `eps_+ = Lambda_2 t`,
/// `eps_- = t sqrt((g1^2/D1 - g2^2/D2)^2 + (g1 g2 (D1+D2)/(D1 D2))^2 f^2)` with
/// `f = sinc((w1 - w2) t / 2)`, and the eigenvector weights
/// `|V11|^2 = |m12|^2 / ((eps_1 - m11)^2 + |m12|^2)`, `|V12|^2 = 1 - |V11|^2`.
pub fn pair_terms<T: Real>(spec: &ModelSpec<T>, t: T) -> PairTerms<T> {
    let (m1, m2) = (&spec.modes[0], &spec.modes[1]);
    let (d1, d2) = (spec.detuning(0), spec.detuning(1));
    let f = sinc((m1.omega - m2.omega) * t * lit(0.5));
    let eps_plus = spec.lambda() * t;
    // (m11 - m22)/2 and |m12|, written out from the explicit eigenvalue formula.
    let half_gap = t * (m1.g * m1.g / d1 - m2.g * m2.g / d2);
    let cross = t * m1.g * m2.g * (d1 + d2) / (d1 * d2) * f;
    let eps_minus = (half_gap * half_gap + cross * cross).sqrt();

    let m12_sq = m_entry(spec, 0, 1, t).modulus_squared();
    // eps_1 - m11 = eps_- - half_gap; for half_gap > 0 use the rationalized
    // form |m12|^2/(eps_- + half_gap) to avoid cancellation.
    let v11_sq = if half_gap > T::zero() {
        let s = eps_minus + half_gap;
        s * s / (s * s + m12_sq)
    } else {
        let d = eps_minus - half_gap;
        let denom = d * d + m12_sq;
        if denom == T::zero() {
            T::one()
        } else {
            m12_sq / denom
        }
    };
    PairTerms {
        eps_plus,
        eps_minus,
        v11_sq,
        v12_sq: T::one() - v11_sq,
    }
}

/// Two-mode closed form evaluated from [`PairTerms`] and per-mode occupations.
pub fn pair_value<T: Real>(terms: &PairTerms<T>, n1: T, n2: T) -> Complex<T> {
    let PairTerms {
        eps_plus,
        eps_minus,
        v11_sq,
        v12_sq,
    } = *terms;
    let one = T::one();
    let bracket = cis(-eps_plus) * (n1 * n2) + cis(eps_plus) * ((n1 + one) * (n2 + one))
        - cis(-eps_minus) * (n1 * n2 + n1 * v11_sq + n2 * v12_sq)
        - cis(eps_minus) * (n1 * n2 + n1 * v12_sq + n2 * v11_sq);
    cis(eps_plus) / bracket
}

/// Two-mode route; rejects `N != 2`.
pub fn r_pair<T: Real>(spec: &ModelSpec<T>, grid: &TimeGrid<T>) -> Result<CoherenceSeries<T>> {
    spec.check()?;
    if spec.n_modes() != 2 {
        return Err(Error::MethodMismatch {
            method: "pair",
            requirement: "exactly two modes",
        });
    }
    let (n1, n2) = (spec.thermal_occupation(0), spec.thermal_occupation(1));
    let times = grid.times();
    let values = times
        .iter()
        .map(|&t| pair_value(&pair_terms(spec, t), n1, n2))
        .collect();
    Ok(CoherenceSeries {
        times,
        values,
        method: Method::Pair,
        spec: spec.clone(),
    })
}
