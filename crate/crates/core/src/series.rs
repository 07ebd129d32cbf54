//! Uniform time grids and the coherence series exchanged between engines.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{from_usize, Real};

/// Uniform grid `t_i = i * t_end / (samples - 1)`, starting at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    t_end: T,
    samples: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t_end: T, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {samples}")));
        }
        if !(t_end > T::zero()) || !t_end.is_finite() {
            return Err(Error::InvalidGrid("t_end must be positive".into()));
        }
        Ok(Self { t_end, samples })
    }

    pub fn t_end(&self) -> T {
        self.t_end
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn step(&self) -> T {
        self.t_end / from_usize(self.samples - 1)
    }

    pub fn time(&self, i: usize) -> T {
        if i + 1 == self.samples {
            self.t_end
        } else {
            self.t_end * from_usize::<T>(i) / from_usize(self.samples - 1)
        }
    }

    pub fn times(&self) -> Vec<T> {
        (0..self.samples).map(|i| self.time(i)).collect()
    }
}

/// Which route produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    General,
    Degenerate,
    Pair,
    Symplectic,
    ExactOracle,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::General,
        Method::Degenerate,
        Method::Pair,
        Method::Symplectic,
        Method::ExactOracle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::General => "general",
            Method::Degenerate => "degenerate",
            Method::Pair => "pair",
            Method::Symplectic => "symplectic",
            Method::ExactOracle => "exact-oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Method::General),
            "degenerate" => Ok(Method::Degenerate),
            "pair" | "pair-closed-form" => Ok(Method::Pair),
            "symplectic" => Ok(Method::Symplectic),
            "exact-oracle" | "oracle" => Ok(Method::ExactOracle),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Samples of the coherence factor `r_N(t)` on a time grid.
#[derive(Debug, Clone)]
pub struct CoherenceSeries<T> {
    pub times: Vec<T>,
    pub values: Vec<Complex<T>>,
    pub method: Method,
    pub spec: ModelSpec<T>,
}

impl<T: Real> CoherenceSeries<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn abs(&self) -> Vec<T> {
        self.values.iter().map(|z| z.modulus()).collect()
    }

    /// Largest `|a_i - b_i| / max(|b_i|, floor)` over the shared samples.
    pub fn max_relative_deviation(&self, other: &Self, floor: T) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (*a - *b).modulus() / b.modulus().max(floor))
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
    }

    /// Largest `| |a_i| - |b_i| |`.
    pub fn max_abs_modulus_deviation(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.modulus() - b.modulus()).abs())
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_errors() {
        let g = TimeGrid::new(3000.0, 3001).unwrap();
        assert_eq!(g.time(0), 0.0);
        assert_eq!(g.time(3000), 3000.0);
        assert_eq!(g.step(), 1.0);
        assert_eq!(g.times().len(), 3001);
        assert!(TimeGrid::new(1.0, 1).is_err());
        assert!(TimeGrid::new(0.0, 10).is_err());
    }

    #[test]
    fn method_tags_parse_back() {
        for m in Method::ALL {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
