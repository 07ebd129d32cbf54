//! The four subcommands; each builds a [`Table`] from a resolved request.

use dispersive_core::analysis::{find_tmax, fit_stmd, sweep_tmax};
use dispersive_core::effective::{r_degenerate, r_general, r_pair};
use dispersive_core::oracle::run_oracle;
use dispersive_core::symplectic::r_symplectic;
use dispersive_core::{CoherenceSeriesF64, Error, Method, ModelSpecF64, Result};

use crate::output::{echo_lines, fmt_f64, Table};
use crate::presets::Case;
use crate::request::{objective_tag, RunRequest};

struct Computed {
    series: CoherenceSeriesF64,
    /// `<sigma_z>`; identically zero on the effective routes.
    sigma_z: Vec<f64>,
}

/// Dispersive-regime check; warnings go to stderr, violations are errors.
fn check_regime(case: &Case) -> Result<()> {
    let d = case.spec.diagnostics()?;
    if d.warning {
        eprintln!(
            "warning[dispersive-ratio]: case {}: max |g_j/Delta_k| = {} is at or above the validated 0.1 envelope",
            case.label,
            fmt_f64(d.max_ratio)
        );
    }
    Ok(())
}

fn compute(spec: &ModelSpecF64, method: Method, req: &RunRequest) -> Result<Computed> {
    let grid = &req.grid;
    let zeros = || vec![0.0; grid.samples()];
    Ok(match method {
        Method::General => Computed {
            series: r_general(spec, grid)?,
            sigma_z: zeros(),
        },
        Method::Degenerate => Computed {
            series: r_degenerate(spec, grid)?,
            sigma_z: zeros(),
        },
        Method::Pair => Computed {
            series: r_pair(spec, grid)?,
            sigma_z: zeros(),
        },
        Method::Symplectic => Computed {
            series: r_symplectic(spec, grid)?,
            sigma_z: zeros(),
        },
        Method::ExactOracle => {
            let o = run_oracle(spec, &req.truncation, grid)?;
            eprintln!(
                "info: exact oracle used {} Fock products, discarded thermal weight {}",
                o.members,
                fmt_f64(o.discarded_weight)
            );
            Computed {
                series: o.series,
                sigma_z: o.sigma_z,
            }
        }
    })
}

fn require_cases(req: &RunRequest) -> Result<()> {
    if req.cases.is_empty() {
        return Err(Error::Config("no model to run".into()));
    }
    Ok(())
}

fn suffix(req: &RunRequest, method: Method, case: &Case) -> String {
    if req.cases.len() > 1 {
        format!("{}_{}", method.tag(), case.label)
    } else {
        method.tag().to_string()
    }
}

/// All (case, method) series in column order.
fn compute_all(req: &RunRequest) -> Result<Vec<(usize, Method, Computed)>> {
    require_cases(req)?;
    let mut out = Vec::new();
    for (k, case) in req.cases.iter().enumerate() {
        check_regime(case)?;
        for &m in &req.methods {
            out.push((k, m, compute(&case.spec, m, req)?));
        }
    }
    Ok(out)
}

fn coherence_columns(req: &RunRequest, all: &[(usize, Method, Computed)]) -> (Vec<String>, bool) {
    let with_sz = req.methods.contains(&Method::ExactOracle);
    let mut header = vec!["t".to_string()];
    for (k, m, _) in all {
        let s = suffix(req, *m, &req.cases[*k]);
        for col in ["re_r", "im_r", "abs_r"] {
            header.push(format!("{col}_{s}"));
        }
        if with_sz {
            header.push(format!("sz_{s}"));
        }
    }
    (header, with_sz)
}

fn coherence_row(i: usize, all: &[(usize, Method, Computed)], with_sz: bool) -> Vec<String> {
    let mut row = vec![fmt_f64(all[0].2.series.times[i])];
    for (_, _, c) in all {
        let z = c.series.values[i];
        row.push(fmt_f64(z.re));
        row.push(fmt_f64(z.im));
        row.push(fmt_f64(z.norm()));
        if with_sz {
            row.push(fmt_f64(c.sigma_z[i]));
        }
    }
    row
}

pub fn coherence(req: &RunRequest) -> Result<Table> {
    let all = compute_all(req)?;
    let (header, with_sz) = coherence_columns(req, &all);
    let rows = (0..req.grid.samples()).map(|i| coherence_row(i, &all, with_sz)).collect();
    Ok(Table {
        comments: echo_lines("coherence", req),
        header,
        rows,
    })
}

/// Like `coherence`, plus `dev_abs_*` columns: `| |r_m| - |r_ref| |` against the
/// first method of the same case.
pub fn compare(req: &RunRequest) -> Result<Table> {
    if req.methods.len() < 2 {
        return Err(Error::Config("compare needs at least two methods".into()));
    }
    let all = compute_all(req)?;
    let (mut header, with_sz) = coherence_columns(req, &all);
    let per_case = req.methods.len();
    let mut devs: Vec<(String, Vec<f64>)> = Vec::new();
    for chunk in all.chunks(per_case) {
        let reference = chunk[0].2.series.abs();
        for (k, m, c) in &chunk[1..] {
            let d = c
                .series
                .abs()
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .collect();
            devs.push((suffix(req, *m, &req.cases[*k]), d));
        }
    }
    let mut comments = echo_lines("compare", req);
    for (name, d) in &devs {
        let (imax, dmax) = d
            .iter()
            .enumerate()
            .fold((0, 0.0_f64), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        let t = req.grid.time(imax);
        comments.push(format!("summary.max_dev[{name}]={}", fmt_f64(dmax)));
        comments.push(format!("summary.max_dev_t[{name}]={}", fmt_f64(t)));
        eprintln!("summary: {name}: max | |r| - |r_ref| | = {} at t = {}", fmt_f64(dmax), fmt_f64(t));
        header.push(format!("dev_abs_{name}"));
    }
    let rows = (0..req.grid.samples())
        .map(|i| {
            let mut row = coherence_row(i, &all, with_sz);
            row.extend(devs.iter().map(|(_, d)| fmt_f64(d[i])));
            row
        })
        .collect();
    Ok(Table {
        comments,
        header,
        rows,
    })
}

pub fn sweep(req: &RunRequest) -> Result<Table> {
    require_cases(req)?;
    let axis = req
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep needs --param/--values or a sweep preset".into()))?;
    if axis.values.is_empty() {
        return Err(Error::Config("sweep has no values".into()));
    }
    let mut comments = echo_lines("sweep", req);
    let mut rows = Vec::new();
    for case in &req.cases {
        check_regime(case)?;
        let result = sweep_tmax(&case.spec, &axis.param, &axis.values, &req.grid)?;
        for (k, p) in result.points.iter().enumerate() {
            let mut row = vec![case.label.clone(), fmt_f64(p.value)];
            match &p.outcome {
                Ok(t) => {
                    row.push(fmt_f64(t.t_max));
                    row.push(fmt_f64(t.value_at_min));
                    row.push(t.no_recurrence.to_string());
                }
                Err(reason) => {
                    row.extend([String::new(), String::new(), String::new()]);
                    comments.push(format!("hole[{}:{k}]={reason}", case.label));
                    eprintln!("warning[sweep-hole]: {}={}: {reason}", axis.param, fmt_f64(p.value));
                }
            }
            rows.push(row);
        }
    }
    Ok(Table {
        comments,
        header: ["case", "value", "t_max", "value_at_min", "no_recurrence"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

pub fn fit(req: &RunRequest) -> Result<Table> {
    require_cases(req)?;
    let mut rows = Vec::new();
    for case in &req.cases {
        check_regime(case)?;
        for &m in &req.methods {
            let c = compute(&case.spec, m, req)?;
            let tmax = find_tmax(&c.series)?;
            let f = fit_stmd(&c.series, &req.fit)?;
            eprintln!(
                "fit: {} {}: gamma = {} (rms residual {})",
                case.label,
                m.tag(),
                fmt_f64(f.gamma),
                fmt_f64(f.rms_residual)
            );
            rows.push(vec![
                case.label.clone(),
                m.tag().to_string(),
                fmt_f64(f.gamma),
                fmt_f64(f.rms_residual),
                fmt_f64(f.window.1),
                fmt_f64(tmax.t_max),
                tmax.no_recurrence.to_string(),
                f.samples.to_string(),
                objective_tag(f.objective).to_string(),
            ]);
        }
    }
    Ok(Table {
        comments: echo_lines("fit", req),
        header: [
            "case",
            "method",
            "gamma",
            "rms_residual",
            "t_fit",
            "t_max",
            "no_recurrence",
            "samples",
            "objective",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}
