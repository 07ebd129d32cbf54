//! Physical model: a qubit dispersively coupled to `N` bosonic modes held at a
//! common temperature.
//!
//! Units: everything is dimensionless in units of the qubit frequency, with
//! `hbar = k_B = 1`. `omega0` defaults to 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Above this `|g_j / Delta_k|` results are flagged as outside the validated envelope.
pub const DISPERSIVE_WARN_RATIO: f64 = 0.1;
/// At or above this `|g_j / Delta_k|` the effective description is rejected.
pub const DISPERSIVE_MAX_RATIO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitSpec<T> {
    pub omega0: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec<T> {
    pub omega: T,
    pub g: T,
}

impl<T: Real> ModeSpec<T> {
    pub fn new(omega: T, g: T) -> Self {
        Self { omega, g }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec<T> {
    pub qubit: QubitSpec<T>,
    pub modes: Vec<ModeSpec<T>>,
    pub temperature: T,
}

/// Dispersive-regime diagnostics: the `|g_j/Delta_k|` table and the qubit shift.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersiveDiagnostics<T> {
    /// `ratios[j][k] = |g_j / Delta_k|`.
    pub ratios: Vec<Vec<T>>,
    pub max_ratio: T,
    /// `Lambda_N = sum_j g_j^2 / Delta_j`.
    pub lambda_n: T,
    /// Set when `max_ratio` reaches [`DISPERSIVE_WARN_RATIO`].
    pub warning: bool,
}

impl<T: Real> ModelSpec<T> {
    /// Builds a spec with `omega0 = 1`.
    pub fn new(modes: Vec<ModeSpec<T>>, temperature: T) -> Self {
        Self {
            qubit: QubitSpec { omega0: T::one() },
            modes,
            temperature,
        }
    }

    /// Builds a spec from parallel coupling/frequency lists with `omega0 = 1`.
    pub fn from_lists(g: &[T], omega: &[T], temperature: T) -> Self {
        assert_eq!(g.len(), omega.len(), "coupling and frequency lists differ in length");
        let modes = g.iter().zip(omega).map(|(&g, &w)| ModeSpec::new(w, g)).collect();
        Self::new(modes, temperature)
    }

    /// `n` modes with coupling `g` and frequencies equally spaced on `[omega_first, omega_last]`.
    pub fn equally_spaced(n: usize, g: T, omega_first: T, omega_last: T, temperature: T) -> Self {
        let modes = (0..n)
            .map(|j| {
                let omega = if n == 1 {
                    omega_first
                } else {
                    let frac: T = lit::<T>(j as f64) / lit((n - 1) as f64);
                    omega_first + (omega_last - omega_first) * frac
                };
                ModeSpec::new(omega, g)
            })
            .collect();
        Self::new(modes, temperature)
    }

    pub fn with_omega0(mut self, omega0: T) -> Self {
        self.qubit.omega0 = omega0;
        self
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    /// Checks every model invariant and hands the spec back unchanged.
    pub fn validate(self) -> Result<Self> {
        self.check()?;
        Ok(self)
    }

    pub fn check(&self) -> Result<()> {
        let omega0 = self.qubit.omega0;
        if !(omega0 > T::zero()) || !omega0.is_finite() {
            return Err(Error::NonPositiveFrequency {
                what: "qubit omega0".into(),
                value: to_f64(omega0),
            });
        }
        if self.modes.is_empty() {
            return Err(Error::EmptyEnvironment);
        }
        for (index, mode) in self.modes.iter().enumerate() {
            if !(mode.omega > T::zero()) || !mode.omega.is_finite() {
                return Err(Error::NonPositiveFrequency {
                    what: format!("mode {index} omega"),
                    value: to_f64(mode.omega),
                });
            }
            if !(mode.g >= T::zero()) || !mode.g.is_finite() {
                return Err(Error::InvalidCoupling {
                    index,
                    value: to_f64(mode.g),
                });
            }
            if mode.omega == omega0 {
                return Err(Error::ZeroDetuning {
                    index,
                    omega: to_f64(mode.omega),
                });
            }
        }
        if !(self.temperature >= T::zero()) || !self.temperature.is_finite() {
            return Err(Error::InvalidTemperature(to_f64(self.temperature)));
        }
        Ok(())
    }

    /// `Delta_j = omega0 - omega_j`.
    pub fn detuning(&self, j: usize) -> T {
        self.qubit.omega0 - self.modes[j].omega
    }

    pub fn detunings(&self) -> Vec<T> {
        (0..self.n_modes()).map(|j| self.detuning(j)).collect()
    }

    /// Thermal occupation of mode `j`; exactly zero at `T = 0`.
    pub fn thermal_occupation(&self, j: usize) -> T {
        bose_occupation(self.modes[j].omega, self.temperature)
    }

    pub fn occupations(&self) -> Vec<T> {
        (0..self.n_modes()).map(|j| self.thermal_occupation(j)).collect()
    }

    /// Total dispersive shift `Lambda_N = sum_j g_j^2 / Delta_j`.
    pub fn lambda(&self) -> T {
        self.modes
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (j, m)| acc + m.g * m.g / self.detuning(j))
    }

    /// True when all mode frequencies agree to `1e-12` relative.
    pub fn is_degenerate(&self) -> bool {
        let w0 = self.modes[0].omega;
        let tol: T = lit(1e-12);
        self.modes
            .iter()
            .all(|m| (m.omega - w0).abs() <= tol * w0.abs().max(m.omega.abs()))
    }

    /// Dispersive-regime diagnostics; errors when the regime is clearly violated.
    pub fn diagnostics(&self) -> Result<DispersiveDiagnostics<T>> {
        let detunings = self.detunings();
        let ratios: Vec<Vec<T>> = self
            .modes
            .iter()
            .map(|m| detunings.iter().map(|&d| (m.g / d).abs()).collect())
            .collect();
        let max_ratio = ratios
            .iter()
            .flatten()
            .fold(T::zero(), |acc, &r| if r > acc { r } else { acc });
        // Relative slack so that a ratio of exactly 0.1 (e.g. g = 0.01, omega = 0.9)
        // is flagged despite rounding in the detuning.
        let warn: T = lit(DISPERSIVE_WARN_RATIO * (1.0 - 1e-12));
        let limit: T = lit(DISPERSIVE_MAX_RATIO);
        if max_ratio >= limit {
            return Err(Error::RegimeViolated {
                max_ratio: to_f64(max_ratio),
                limit: DISPERSIVE_MAX_RATIO,
            });
        }
        Ok(DispersiveDiagnostics {
            ratios,
            max_ratio,
            lambda_n: self.lambda(),
            warning: max_ratio >= warn,
        })
    }

    /// Same physics in another scalar type.
    pub fn cast<U: Real>(&self) -> ModelSpec<U> {
        let c = |x: T| lit::<U>(to_f64(x));
        ModelSpec {
            qubit: QubitSpec {
                omega0: c(self.qubit.omega0),
            },
            modes: self
                .modes
                .iter()
                .map(|m| ModeSpec::new(c(m.omega), c(m.g)))
                .collect(),
            temperature: c(self.temperature),
        }
    }
}

/// `1 / (e^{omega/T} - 1)`, exactly zero at `T = 0`.
pub fn bose_occupation<T: Real>(omega: T, temperature: T) -> T {
    if temperature == T::zero() {
        return T::zero();
    }
    T::one() / (omega / temperature).exp_m1()
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    qubit: QubitTable,
    modes: Vec<ModeTable>,
    environment: EnvironmentTable,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct QubitTable {
    #[serde(default = "default_omega0")]
    omega0: f64,
}

impl Default for QubitTable {
    fn default() -> Self {
        Self { omega0: 1.0 }
    }
}

fn default_omega0() -> f64 {
    1.0
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ModeTable {
    omega: f64,
    g: f64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentTable {
    temperature: f64,
}

impl<T: Real> ModelSpec<T> {
    /// Parses and validates a TOML model file.
    ///
    /// ```toml
    /// [qubit]
    /// omega0 = 1.0
    ///
    /// [[modes]]
    /// omega = 0.8
    /// g = 0.01
    ///
    /// [environment]
    /// temperature = 1.0
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let spec = ModelSpec {
            qubit: QubitSpec {
                omega0: lit(file.qubit.omega0),
            },
            modes: file
                .modes
                .iter()
                .map(|m| ModeSpec::new(lit(m.omega), lit(m.g)))
                .collect(),
            temperature: lit(file.environment.temperature),
        };
        spec.validate()
    }

    /// Serializes back to the TOML model-file schema.
    pub fn to_toml_string(&self) -> String {
        let file = ConfigFile {
            qubit: QubitTable {
                omega0: to_f64(self.qubit.omega0),
            },
            modes: self
                .modes
                .iter()
                .map(|m| ModeTable {
                    omega: to_f64(m.omega),
                    g: to_f64(m.g),
                })
                .collect(),
            environment: EnvironmentTable {
                temperature: to_f64(self.temperature),
            },
        };
        toml::to_string(&file).expect("model file serializes")
    }

    /// Flat `key=value` lines, e.g. `modes[1].g=0.01`.
    pub fn echo_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("qubit.omega0={}", to_f64(self.qubit.omega0))];
        for (j, m) in self.modes.iter().enumerate() {
            lines.push(format!("modes[{j}].omega={}", to_f64(m.omega)));
            lines.push(format!("modes[{j}].g={}", to_f64(m.g)));
        }
        lines.push(format!("environment.temperature={}", to_f64(self.temperature)));
        lines
    }

    /// Replaces one scalar addressed by a path such as `modes[1].g`,
    /// `modes[0].omega`, `qubit.omega0` or `environment.temperature`.
    pub fn with_param(&self, path: &str, value: T) -> Result<Self> {
        let mut out = self.clone();
        *out.param_mut(path)? = value;
        Ok(out)
    }

    pub fn param(&self, path: &str) -> Result<T> {
        let mut tmp = self.clone();
        Ok(*tmp.param_mut(path)?)
    }

    fn param_mut(&mut self, path: &str) -> Result<&mut T> {
        let bad = || Error::Config(format!("unknown parameter path `{path}`"));
        match path {
            "qubit.omega0" | "omega0" => return Ok(&mut self.qubit.omega0),
            "environment.temperature" | "temperature" => return Ok(&mut self.temperature),
            _ => {}
        }
        let rest = path.strip_prefix("modes[").ok_or_else(bad)?;
        let (index, field) = rest.split_once("].").ok_or_else(bad)?;
        let index: usize = index.parse().map_err(|_| bad())?;
        let n = self.modes.len();
        let mode = self
            .modes
            .get_mut(index)
            .ok_or_else(|| Error::Config(format!("`{path}`: mode index out of range (N = {n})")))?;
        match field {
            "omega" => Ok(&mut mode.omega),
            "g" => Ok(&mut mode.g),
            _ => Err(bad()),
        }
    }
}
