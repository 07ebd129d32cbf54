use dispersive_core::analysis::{deviation_series, find_tmax, fit_stmd, recurrence_markers, FitPolicy};
use dispersive_core::effective::{r_degenerate, r_general};
use dispersive_core::{CoherenceSeriesF64, ModelSpecF64, TimeGridF64};
use std::f64::consts::PI;

/// First recurrence marker reaching `level`, if any.
fn first_full_recurrence(s: &CoherenceSeriesF64, level: f64) -> Option<f64> {
    recurrence_markers(s).into_iter().find(|&(_, a)| a >= level).map(|(t, _)| t)
}

#[test]
fn degenerate_recurrences_are_periodic_and_complete() {
    let s = ModelSpecF64::from_lists(&[0.01, 0.01], &[0.8, 0.8], 1.0);
    let period = PI / s.lambda();
    let grid = TimeGridF64::new(3.5 * period, 7001).unwrap();
    let m = recurrence_markers(&r_degenerate(&s, &grid).unwrap());
    assert_eq!(m.len(), 3);
    for (k, (t, a)) in m.iter().enumerate() {
        assert!((t - (k + 1) as f64 * period).abs() <= grid.step());
        assert!((a - 1.0).abs() < 1e-5);
    }
}

#[test]
fn zero_temperature_has_no_markers_and_no_deviation() {
    let s = ModelSpecF64::from_lists(&[0.01, 0.02], &[0.8, 0.7], 0.0);
    let r = r_general(&s, &TimeGridF64::new(3000.0, 3000).unwrap()).unwrap();
    assert!(recurrence_markers(&r).is_empty());
    assert!(find_tmax(&r).unwrap().no_recurrence);
    assert!(deviation_series(&r, 0.0).iter().all(|&d| d == 0.0));
    assert_eq!(fit_stmd(&r, &FitPolicy::default()).unwrap().gamma, 0.0);
}

#[test]
fn more_modes_delay_the_complete_recurrence() {
    let grid = TimeGridF64::new(30000.0, 30001).unwrap();
    let n2 = ModelSpecF64::equally_spaced(2, 0.01, 0.7, 0.8, 1.0);
    let n5 = ModelSpecF64::equally_spaced(5, 0.01, 0.7, 0.8, 1.0);
    let t2 = first_full_recurrence(&r_general(&n2, &grid).unwrap(), 0.9).expect("N = 2 recurs");
    let t5 = first_full_recurrence(&r_general(&n5, &grid).unwrap(), 0.9);
    assert!(t5.is_none_or(|t5| t5 > t2), "N=2: {t2}, N=5: {t5:?}");
}

#[test]
fn fig2f_deviation_is_a_bounded_band() {
    let s = ModelSpecF64::from_lists(&[0.01, 0.01], &[0.8, 0.7], 2.0);
    let r = r_general(&s, &TimeGridF64::new(6000.0, 6001).unwrap()).unwrap();
    let f = fit_stmd(&r, &FitPolicy::default()).unwrap();
    let d = deviation_series(&r, f.gamma);
    let tmax = find_tmax(&r).unwrap();
    let band = d[..tmax.index].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    assert!(band < 0.15, "{band}");
    assert_eq!(d[0], 0.0);
}
