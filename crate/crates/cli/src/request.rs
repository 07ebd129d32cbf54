//! Turning flags, presets and config files into one resolved run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dispersive_core::analysis::{FitObjective, FitPolicy};
use dispersive_core::oracle::TruncationSpec;
use dispersive_core::{Error, Method, ModeSpec, ModelSpecF64, TimeGridF64};

use crate::presets::{preset, Case, SweepAxis};

/// Default grid: 3000 samples over `[0, 3000]`.
pub const DEFAULT_T_END: f64 = 3000.0;
pub const DEFAULT_SAMPLES: usize = 3000;

#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub cases: Vec<Case>,
    pub grid: TimeGridF64,
    pub methods: Vec<Method>,
    pub output: Option<PathBuf>,
    pub preset: Option<String>,
    pub fit: FitPolicy,
    pub truncation: TruncationSpec,
    pub sweep: Option<SweepAxis>,
    pub timestamp: bool,
}

/// Flag values before resolution; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub preset: Option<String>,
    pub methods: Option<Vec<Method>>,
    pub t_end: Option<f64>,
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
    pub no_timestamp: bool,
    pub fit_window: Option<f64>,
    pub fit_objective: Option<FitObjective>,
    pub weight_tol: Option<f64>,
    pub param: Option<String>,
    pub values: Option<Vec<f64>>,
}

pub fn parse_methods(list: &str) -> Result<Vec<Method>, Error> {
    let methods = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Method>, _>>()?;
    if methods.is_empty() {
        return Err(Error::Config("empty method list".into()));
    }
    Ok(methods)
}

pub fn parse_objective(s: &str) -> Result<FitObjective, Error> {
    match s {
        "amplitude" => Ok(FitObjective::Amplitude),
        "log-linear" | "log" => Ok(FitObjective::LogLinear),
        other => Err(Error::Config(format!("unknown fit objective `{other}`"))),
    }
}

pub fn objective_tag(o: FitObjective) -> &'static str {
    match o {
        FitObjective::Amplitude => "amplitude",
        FitObjective::LogLinear => "log-linear",
    }
}

/// Values as a comma list or `start:stop:count` (inclusive, evenly spaced).
pub fn parse_values(s: &str) -> Result<Vec<f64>, Error> {
    let bad = |what: &str| Error::Config(format!("bad sweep values `{s}`: {what}"));
    if let Some((start, rest)) = s.split_once(':') {
        let (stop, count) = rest.split_once(':').ok_or_else(|| bad("expected start:stop:count"))?;
        let start: f64 = start.trim().parse().map_err(|_| bad("start"))?;
        let stop: f64 = stop.trim().parse().map_err(|_| bad("stop"))?;
        let count: usize = count.trim().parse().map_err(|_| bad("count"))?;
        return match count {
            0 => Err(bad("count must be positive")),
            1 => Ok(vec![start]),
            _ => Ok((0..count)
                .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
                .collect()),
        };
    }
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(values)
}

/// Run settings recovered from a CSV header written by this tool.
#[derive(Debug, Default)]
struct Echo {
    cases: Vec<Case>,
    preset: Option<String>,
    t_end: Option<f64>,
    samples: Option<usize>,
    methods: Option<Vec<Method>>,
    fit_window: Option<f64>,
    fit_objective: Option<FitObjective>,
    weight_tol: Option<f64>,
    sweep: Option<SweepAxis>,
}

fn num<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, Error> {
    map.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| Error::Config(format!("echo key `{key}` has a bad value `{v}`")))
        })
        .transpose()
}

fn parse_echo(text: &str) -> Result<Echo, Error> {
    let map: BTreeMap<String, String> = text
        .lines()
        .map_while(|l| l.strip_prefix('#'))
        .filter_map(|l| l.trim().split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect();
    let labels = map
        .get("cases")
        .ok_or_else(|| Error::Config("CSV header has no `cases` line".into()))?;
    let mut cases = Vec::new();
    for label in labels.split(',') {
        let prefix = format!("case[{label}].");
        let keys: Vec<(&str, &str)> = map
            .iter()
            .filter_map(|(k, v)| k.strip_prefix(&prefix).map(|k| (k, v.as_str())))
            .collect();
        let n_modes = keys
            .iter()
            .filter_map(|(k, _)| k.strip_prefix("modes[")?.split_once(']')?.0.parse::<usize>().ok())
            .max()
            .map_or(0, |m| m + 1);
        let mut spec = ModelSpecF64::new(vec![ModeSpec::new(f64::NAN, f64::NAN); n_modes], f64::NAN);
        for (k, v) in keys {
            let value: f64 = v
                .parse()
                .map_err(|_| Error::Config(format!("echo key `{prefix}{k}` has a bad value `{v}`")))?;
            spec = spec.with_param(k, value)?;
        }
        cases.push(Case {
            label: label.to_string(),
            spec: spec.validate()?,
        });
    }
    let sweep = match (map.get("sweep.param"), map.get("sweep.values")) {
        (Some(p), Some(v)) => Some(SweepAxis {
            param: p.clone(),
            values: parse_values(v)?,
        }),
        _ => None,
    };
    Ok(Echo {
        cases,
        preset: map.get("preset").cloned(),
        t_end: num(&map, "grid.t_end")?,
        samples: num(&map, "grid.samples")?,
        methods: map.get("methods").map(|m| parse_methods(m)).transpose()?,
        fit_window: num(&map, "fit.window_fraction")?,
        fit_objective: map.get("fit.objective").map(|o| parse_objective(o)).transpose()?,
        weight_tol: num(&map, "oracle.weight_tol")?,
        sweep,
    })
}

/// Reads a model file: TOML, or the `#` header of a CSV this tool wrote.
fn load_config(path: &Path) -> Result<Echo, Error> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('#') {
        return parse_echo(&text);
    }
    let spec = ModelSpecF64::from_toml_str(&text)?;
    Ok(Echo {
        cases: vec![Case {
            label: "main".into(),
            spec,
        }],
        ..Echo::default()
    })
}

impl RunRequest {
    /// Resolves preset, then config file, then explicit flags (later wins).
    pub fn resolve(o: &Overrides, default_methods: &[Method]) -> Result<Self, Error> {
        let base = o
            .preset
            .as_deref()
            .map(|id| preset(id).ok_or_else(|| Error::Config(format!("unknown preset `{id}`"))))
            .transpose()?;
        let echo = o.config.as_deref().map(load_config).transpose()?;
        if base.is_none() && echo.is_none() {
            return Err(Error::Config("give --preset ID or --config PATH".into()));
        }
        let echo = echo.unwrap_or_default();

        let cases = if echo.cases.is_empty() {
            base.as_ref().map(|p| p.cases.clone()).unwrap_or_default()
        } else {
            echo.cases
        };
        let preset_id = o
            .preset
            .as_ref()
            .and(base.as_ref().map(|p| p.id.to_string()))
            .or(echo.preset);
        let t_end = o
            .t_end
            .or(echo.t_end)
            .or(base.as_ref().map(|p| p.grid.t_end()))
            .unwrap_or(DEFAULT_T_END);
        let samples = o
            .samples
            .or(echo.samples)
            .or(base.as_ref().map(|p| p.grid.samples()))
            .unwrap_or(DEFAULT_SAMPLES);
        let methods = o
            .methods
            .clone()
            .or(echo.methods)
            .or(base.as_ref().map(|p| p.methods.clone()))
            .unwrap_or_else(|| default_methods.to_vec());
        let defaults = FitPolicy::default();
        let fit = FitPolicy {
            window_fraction: o.fit_window.or(echo.fit_window).unwrap_or(defaults.window_fraction),
            objective: o.fit_objective.or(echo.fit_objective).unwrap_or(defaults.objective),
        };
        let truncation = TruncationSpec {
            weight_tol: o
                .weight_tol
                .or(echo.weight_tol)
                .unwrap_or(TruncationSpec::default().weight_tol),
            ..TruncationSpec::default()
        };
        truncation.check()?;
        let mut sweep = echo.sweep.or(base.and_then(|p| p.sweep));
        if let Some(param) = &o.param {
            sweep = Some(SweepAxis {
                param: param.clone(),
                values: sweep.map(|s| s.values).unwrap_or_default(),
            });
        }
        if let Some(values) = &o.values {
            let param = sweep
                .as_ref()
                .map(|s| s.param.clone())
                .ok_or_else(|| Error::Config("--values needs --param or a sweep preset".into()))?;
            sweep = Some(SweepAxis {
                param,
                values: values.clone(),
            });
        }
        Ok(RunRequest {
            cases,
            grid: TimeGridF64::new(t_end, samples)?,
            methods,
            output: o.output.clone(),
            preset: preset_id,
            fit,
            truncation,
            sweep,
            timestamp: !o.no_timestamp,
        })
    }
}
