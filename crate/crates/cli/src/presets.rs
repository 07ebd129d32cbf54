//! Frozen parameter sets for every panel of the paper's Figs. 2, 3, 4 and A3.

use dispersive_core::{Method, ModelSpecF64, TimeGridF64};

/// One model in a preset; presets with several curves carry several cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub spec: ModelSpecF64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub summary: &'static str,
    pub cases: Vec<Case>,
    pub grid: TimeGridF64,
    pub methods: Vec<Method>,
    pub sweep: Option<SweepAxis>,
}

pub const PRESET_IDS: [&str; 22] = [
    "2a", "2b", "2c", "2d", "2e", "2f", "3a", "3b", "4a", "4b", "4c", "4d", "4e", "4f", "A3a", "A3b", "A3c",
    "A3d", "A3e", "A3f", "A3g", "A3h",
];

const TEMPERATURES: [(&str, f64); 3] = [("T0.5", 0.5), ("T1", 1.0), ("T2", 2.0)];

fn grid(t_end: f64, samples: usize) -> TimeGridF64 {
    TimeGridF64::new(t_end, samples).expect("preset grid is valid")
}

fn two_mode(g: [f64; 2], omega: [f64; 2], temperature: f64) -> ModelSpecF64 {
    ModelSpecF64::from_lists(&g, &omega, temperature)
}

fn fig2(g: [f64; 2], omega: [f64; 2]) -> Vec<Case> {
    TEMPERATURES
        .iter()
        .map(|&(label, t)| Case {
            label: label.into(),
            spec: two_mode(g, omega, t),
        })
        .collect()
}

fn fig4(ns: &[usize], omega_last: f64) -> Vec<Case> {
    ns.iter()
        .map(|&n| Case {
            label: format!("N{n}"),
            spec: ModelSpecF64::equally_spaced(n, 0.01, 0.7, omega_last, 1.0),
        })
        .collect()
}

fn single(label: &str, spec: ModelSpecF64) -> Vec<Case> {
    vec![Case {
        label: label.into(),
        spec,
    }]
}

/// Looks up a preset by id (case-insensitive on the `A3` prefix).
pub fn preset(id: &str) -> Option<FigurePreset> {
    use Method::*;
    let pair = vec![General, Pair];
    let oracle = vec![General, ExactOracle];
    let id = PRESET_IDS.iter().copied().find(|p| p.eq_ignore_ascii_case(id))?;
    let p = |summary, cases, grid, methods| FigurePreset {
        id,
        summary,
        cases,
        grid,
        methods,
        sweep: None,
    };
    // Mode frequencies and couplings of the four appendix panels.
    let a3 = |g2: f64, omega2: f64| single("T1", two_mode([0.01, g2], [0.8, omega2], 1.0));
    Some(match id {
        "2a" => p("g=(0.01,0.02), w=(0.8,0.7)", fig2([0.01, 0.02], [0.8, 0.7]), grid(3000.0, 3000), pair),
        "2b" => p("g=(0.02,0.01), w=(0.8,0.7)", fig2([0.02, 0.01], [0.8, 0.7]), grid(3000.0, 3000), pair),
        "2c" => p("g=(0.01,0.01), w=(0.8,0.7)", fig2([0.01, 0.01], [0.8, 0.7]), grid(3000.0, 3000), pair),
        "2d" => p(
            "g=(0.01,0.01), w=(0.8,0.8), degenerate",
            fig2([0.01, 0.01], [0.8, 0.8]),
            grid(3000.0, 3000),
            vec![General, Pair, Degenerate, Symplectic],
        ),
        "2e" => p("g=(0.01,0.01), w=(0.8,0.9)", fig2([0.01, 0.01], [0.8, 0.9]), grid(3000.0, 3000), pair),
        "2f" => p(
            "short-time decay and fits, parameters of 2c",
            fig2([0.01, 0.01], [0.8, 0.7]),
            grid(6000.0, 6001),
            pair,
        ),
        "3a" => FigurePreset {
            sweep: Some(SweepAxis {
                param: "modes[1].g".into(),
                values: (1..=60).map(|k| k as f64 / 2000.0).collect(),
            }),
            ..p(
                "t_max vs g2; g1=0.01, w=(0.8,0.7), T=0.5",
                single("T0.5", two_mode([0.01, 0.01], [0.8, 0.7], 0.5)),
                grid(8000.0, 8001),
                vec![General],
            )
        },
        "3b" => FigurePreset {
            sweep: Some(SweepAxis {
                param: "modes[1].omega".into(),
                values: (0..=60).map(|k| (650 + 5 * k) as f64 / 1000.0).collect(),
            }),
            ..p(
                "t_max vs w2; g=(0.01,0.01), w1=0.8, T=0.5",
                single("T0.5", two_mode([0.01, 0.01], [0.8, 0.7], 0.5)),
                grid(8000.0, 8001),
                vec![General],
            )
        },
        "4a" => p("N modes on [0.7,0.8], T=1, g=0.01", fig4(&[2, 3, 4, 5, 10], 0.8), grid(6000.0, 6001), vec![General]),
        "4b" => p("N modes on [0.7,0.9], T=1, g=0.01", fig4(&[2, 3, 4, 5, 10], 0.9), grid(6000.0, 6001), vec![General]),
        "4c" => p("N=3 on [0.7,0.8], short-time fit", fig4(&[3], 0.8), grid(6000.0, 6001), vec![General]),
        "4d" => p("N=4 on [0.7,0.8], short-time fit", fig4(&[4], 0.8), grid(6000.0, 6001), vec![General]),
        "4e" => p("N=5 on [0.7,0.8], short-time fit", fig4(&[5], 0.8), grid(6000.0, 6001), vec![General]),
        "4f" => p("N=10 on [0.7,0.8], short-time fit", fig4(&[10], 0.8), grid(6000.0, 6001), vec![General]),
        "A3a" | "A3e" => p("g=(0.01,0.02), w=(0.8,0.7), T=1, exact comparison", a3(0.02, 0.7), grid(6000.0, 6001), oracle),
        "A3b" | "A3f" => p("g=(0.01,0.01), w=(0.8,0.7), T=1, exact comparison", a3(0.01, 0.7), grid(6000.0, 6001), oracle),
        "A3c" | "A3g" => p("g=(0.01,0.01), w=(0.8,0.8), T=1, exact comparison", a3(0.01, 0.8), grid(6000.0, 6001), oracle),
        "A3d" | "A3h" => p("g=(0.01,0.01), w=(0.8,0.9), T=1, exact comparison", a3(0.01, 0.9), grid(6000.0, 6001), oracle),
        _ => unreachable!("every listed id has a preset"),
    })
}
