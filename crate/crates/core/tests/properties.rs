//! Randomized invariants over valid model specs.

use dispersive_core::analysis::{find_tmax, fit_modulus, sweep_tmax, FitObjective};
use dispersive_core::branch::max_phase_step;
use dispersive_core::effective::gaussian::det_series;
use dispersive_core::effective::{build_m, eigensystem, r_degenerate, r_general, r_pair, GaussianDetMatrix};
use dispersive_core::symplectic::{build_quadratic_form, propagator};
use dispersive_core::{ModeSpec, ModelSpecF64, TimeGridF64};
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;

const CASES: u32 = 128;

fn mode() -> impl Strategy<Value = ModeSpec<f64>> {
    (0.6..0.95_f64, 0.001..0.02_f64).prop_map(|(omega, g)| ModeSpec::new(omega, g))
}

fn spec() -> impl Strategy<Value = ModelSpecF64> {
    (prop::collection::vec(mode(), 1..=5), 0.0..2.0_f64).prop_map(|(modes, t)| ModelSpecF64::new(modes, t))
}

fn degenerate_spec(max_n: usize) -> impl Strategy<Value = ModelSpecF64> {
    (
        prop::collection::vec(0.001..0.02_f64, 1..=max_n),
        0.6..0.95_f64,
        0.05..2.0_f64,
    )
        .prop_map(|(g, omega, t)| {
            let w = vec![omega; g.len()];
            ModelSpecF64::from_lists(&g, &w, t)
        })
}

/// Independent evaluation: `r = 1/det(I + Nbar (I - e^{-iM}))` with a generic
/// matrix exponential.
fn r_direct(spec: &ModelSpecF64, t: f64) -> Complex<f64> {
    let m = build_m(spec, t).entries;
    let n = m.nrows();
    let u = (m * Complex::new(0.0, -1.0)).exp();
    let id = DMatrix::<Complex<f64>>::identity(n, n);
    let nbar = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        spec.occupations().into_iter().map(|x| Complex::new(x, 0.0)),
    ));
    Complex::new(1.0, 0.0) / (id.clone() + nbar * (id - u)).determinant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn coupling_matrix_is_hermitian(s in spec(), t in 0.0..6000.0_f64) {
        let m = build_m(&s, t);
        prop_assert!(m.hermiticity_defect() <= 1e-15 * m.max_entry().max(1e-300));
    }

    #[test]
    fn trace_is_twice_lambda_t(s in spec(), t in 0.0..6000.0_f64) {
        let m = build_m(&s, t);
        let expect = 2.0 * s.lambda() * t;
        prop_assert!((m.trace().re - expect).abs() <= 1e-12 * expect.max(1e-300));
        prop_assert_eq!(m.trace().im, 0.0);
        let eig = eigensystem(&m).unwrap();
        prop_assert!((eig.trace() - expect).abs() <= 1e-12 * expect.max(1e-12));
    }

    #[test]
    fn eigensystem_is_unitary_and_diagonalizing(s in spec(), t in 0.0..6000.0_f64) {
        let m = build_m(&s, t);
        let eig = eigensystem(&m).unwrap();
        prop_assert!(eig.unitarity_defect() < 1e-13);
        let (off, diag) = eig.diagonalization_residual(&m.entries);
        let scale = m.max_entry().max(1e-300);
        prop_assert!(off < 1e-13 * scale && diag < 1e-13 * scale);
    }

    #[test]
    fn determinant_is_gauge_invariant(
        s in spec(),
        t in 1.0..6000.0_f64,
        seed in any::<u64>(),
        phases in prop::collection::vec(-3.2..3.2_f64, 5),
    ) {
        let eig = eigensystem(&build_m(&s, t)).unwrap();
        let n = eig.dim();
        let mut order: Vec<usize> = (0..n).collect();
        // Deterministic shuffle from the seed.
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13; x ^= x >> 7; x ^= x << 17;
            order.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let nbar = s.occupations();
        let a = GaussianDetMatrix::assemble(&nbar, &eig).det();
        let b = GaussianDetMatrix::assemble(&nbar, &eig.regauged(&order, &phases[..n])).det();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm());
    }

    #[test]
    fn general_route_matches_direct_determinant(s in spec(), frac in 0.0..1.0_f64) {
        let grid = TimeGridF64::new(3000.0, 3001).unwrap();
        let r = r_general(&s, &grid).unwrap();
        let i = ((grid.samples() - 1) as f64 * frac) as usize;
        let direct = r_direct(&s, grid.time(i));
        prop_assert!((r.values[i] - direct).norm() <= 1e-9 * direct.norm(),
            "t={} general={} direct={}", grid.time(i), r.values[i], direct);
    }

    #[test]
    fn modulus_never_exceeds_one(s in spec()) {
        let grid = TimeGridF64::new(3000.0, 3001).unwrap();
        let r = r_general(&s, &grid).unwrap();
        prop_assert!(r.abs().iter().all(|&a| a <= 1.0 + 1e-12));
    }

    #[test]
    fn determinant_phase_is_continuous(s in spec()) {
        let grid = TimeGridF64::new(3000.0, 3001).unwrap();
        let d = det_series(&s, &s.occupations(), &grid).unwrap();
        prop_assert!(max_phase_step(&d) < std::f64::consts::PI);
        let r = r_general(&s, &grid).unwrap();
        prop_assert!(max_phase_step(&r.values) < std::f64::consts::PI);
    }

    #[test]
    fn propagator_is_symplectic(s in degenerate_spec(5), t in 0.0..6000.0_f64) {
        let qf = build_quadratic_form(&s).unwrap();
        prop_assert!(propagator(&qf, t).symplecticity_defect() < 1e-12);
    }

    #[test]
    fn pair_formula_matches_general(
        g in prop::collection::vec(0.001..0.02_f64, 2),
        w in prop::collection::vec(0.6..0.95_f64, 2),
        temp in 0.0..2.0_f64,
    ) {
        let s = ModelSpecF64::from_lists(&g, &w, temp);
        let grid = TimeGridF64::new(3000.0, 1001).unwrap();
        let a = r_pair(&s, &grid).unwrap();
        let b = r_general(&s, &grid).unwrap();
        prop_assert!(a.max_relative_deviation(&b, 1e-300) < 1e-9);
    }

    #[test]
    fn degenerate_tmax_is_pi_over_two_lambda(s in degenerate_spec(5)) {
        let lambda = s.lambda();
        let expect = std::f64::consts::FRAC_PI_2 / lambda;
        let grid = TimeGridF64::new(2.0 * expect, 2001).unwrap();
        let tm = find_tmax(&r_degenerate(&s, &grid).unwrap()).unwrap();
        prop_assert!(!tm.no_recurrence);
        prop_assert!((tm.t_max - expect).abs() <= grid.step());
    }

    #[test]
    fn log_fit_is_scale_equivariant(
        gamma in 1e-5..1e-2_f64,
        wiggle in 0.0..0.05_f64,
        freq in 0.001..0.1_f64,
    ) {
        let t: Vec<f64> = (0..400).map(|i| i as f64).collect();
        let a: Vec<f64> = t.iter().map(|&t| (-2.0 * gamma * t).exp() * (1.0 + wiggle * (freq * t).sin())).collect();
        let a2: Vec<f64> = a.iter().map(|x| x * x).collect();
        let f1 = fit_modulus(&t, &a, 300.0, FitObjective::LogLinear).unwrap();
        let f2 = fit_modulus(&t, &a2, 300.0, FitObjective::LogLinear).unwrap();
        prop_assert!((f2.gamma - 2.0 * f1.gamma).abs() <= 1e-12 * f1.gamma.abs().max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sweep_is_permutation_invariant(values in prop::collection::vec(0.001..0.02_f64, 2..6), seed in any::<u64>()) {
        let base = ModelSpecF64::from_lists(&[0.01, 0.01], &[0.8, 0.7], 0.5);
        let grid = TimeGridF64::new(8000.0, 4001).unwrap();
        let mut shuffled = values.clone();
        let k = (seed as usize) % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.reverse();
        let a = sweep_tmax(&base, "modes[1].g", &values, &grid).unwrap();
        let b = sweep_tmax(&base, "modes[1].g", &shuffled, &grid).unwrap();
        for p in &a.points {
            let q = b.points.iter().find(|q| q.value == p.value).unwrap();
            prop_assert_eq!(&p.outcome, &q.outcome);
        }
    }
}
