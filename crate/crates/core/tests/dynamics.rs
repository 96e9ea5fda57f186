use std::f64::consts::PI;

use dirac_sta::bilinears::current_conservation_residual;
use dirac_sta::dynamics::{
    evolve, kg_residual, residual_charged, residual_massive, residual_massless, residual_operator_form,
    residual_with_time_derivative, EmPlaneWave, Execution, RestOscillator, Solution, System,
};
use dirac_sta::random::{random_parity, seeded_rng};
use dirac_sta::snapshot::{load_snapshot, save_snapshot, BodyEncoding};
use dirac_sta::symmetry::apply_p;
use dirac_sta::{DiracFieldValue, FieldState, Multivector, Potential};

const EXEC: Execution = Execution::Serial;

fn wave() -> EmPlaneWave {
    EmPlaneWave { amplitude: 1.0, k: 1.0 }
}

/// Residual of the sampled plane wave with its exact time derivative, so only
/// the spatial stencil contributes.
fn spatial_residual(n: usize) -> f64 {
    let dx = 2.0 * PI / n as f64;
    let s = wave().sample(0.3, n, dx).unwrap();
    let dt: Vec<DiracFieldValue> = (0..n).map(|k| wave().jet(0.3, s.z(k)).grad[0]).collect();
    residual_with_time_derivative(System::Massless, &s, &dt, EXEC).unwrap().max_abs
}

#[test]
fn spatial_error_is_fourth_order() {
    let ratio = spatial_residual(32) / spatial_residual(64);
    assert!((ratio - 16.0).abs() <= 4.0, "ratio {ratio}");
}

fn wave_window(n: usize, dt: f64) -> Vec<FieldState> {
    let dx = 2.0 * PI / n as f64;
    (0..5).map(|i| wave().sample(0.1 + i as f64 * dt, n, dx).unwrap()).collect()
}

#[test]
fn conservation_converges_for_plane_wave() {
    let coarse = current_conservation_residual(&wave_window(32, 2.0 * PI / 128.0)).unwrap();
    let fine = current_conservation_residual(&wave_window(64, 2.0 * PI / 256.0)).unwrap();
    let ratio = coarse / fine;
    assert!((ratio - 16.0).abs() <= 4.0, "ratio {ratio}");
}

#[test]
fn parity_image_of_massless_trajectory_is_a_solution() {
    let n = 256;
    let dx = 2.0 * PI / n as f64;
    let s0 = wave().sample(0.0, n, dx).unwrap();
    let traj = evolve(&s0, 0.1 * dx, 40, 1, EXEC).unwrap();
    let mirrored: Vec<FieldState> = traj.iter().map(|s| apply_p(s).unwrap()).collect();
    for (w, m) in traj.windows(5).zip(mirrored.windows(5)).step_by(9) {
        let original = residual_massless(w, EXEC).unwrap().max_abs;
        let image = residual_massless(m, EXEC).unwrap().max_abs;
        assert!(image < 1e-10, "{image}");
        assert!((image - original).abs() < 1e-12);
    }
}

#[test]
fn massless_evolution_keeps_sectors_apart() {
    let mut rng = seeded_rng(17);
    let n = 32;
    let dx = 2.0 * PI / n as f64;
    let harmonics: Vec<Multivector> = (0..3).map(|_| random_parity(&mut rng, true)).collect();
    let s0 = FieldState::from_fn(n, dx, 0.0, 0.0, 0.0, Potential::Zero, |z| {
        let even = harmonics[0] + harmonics[1] * z.cos() + harmonics[2] * (2.0 * z).sin();
        DiracFieldValue::new(even, Multivector::zero(), even * 0.5, Multivector::zero()).unwrap()
    })
    .unwrap();
    let traj = evolve(&s0, 0.4 * dx, 200, 50, EXEC).unwrap();
    for s in &traj {
        for v in s.values() {
            assert!(v.psi_o().max_abs() <= 1e-12 && v.psi_o_prime().max_abs() <= 1e-12);
        }
    }
}

#[test]
fn uncoupled_charged_residual_matches_massive() {
    let mut rng = seeded_rng(23);
    let n = 16;
    let dx = 0.3;
    let modes: Vec<[Multivector; 2]> = (0..5)
        .map(|_| [random_parity(&mut rng, true), random_parity(&mut rng, false)])
        .collect();
    let window: Vec<FieldState> = (0..5)
        .map(|i| {
            let m = &modes[i];
            FieldState::from_fn(n, dx, 0.01 * i as f64, 1.0, 0.0, Potential::Zero, |z| {
                let c = (2.0 * PI * z / (n as f64 * dx)).cos();
                DiracFieldValue::new(m[0] * c, m[1], m[0], m[1] * c).unwrap()
            })
            .unwrap()
        })
        .collect();
    let charged = residual_charged(&window, EXEC).unwrap();
    let massive = residual_massive(&window, EXEC).unwrap();
    assert!(charged.max_abs > 1.0, "random data should not solve the equations");
    assert!((charged.max_abs - massive.max_abs).abs() < 1e-12);
    for e in &massive.entries {
        let primed = charged.entry(&format!("{}'", e.label)).unwrap();
        let unprimed = charged.entry(&e.label).unwrap();
        assert!((e.max_abs - unprimed.max_abs.max(primed.max_abs)).abs() < 1e-12);
    }
}

#[test]
fn operator_form_differs_from_field_equation_on_rest_oscillator() {
    let sol = RestOscillator { omega0: 1.0 };
    let window: Vec<FieldState> = (0..5).map(|i| sol.sample(0.5 + 0.01 * i as f64, 8, 0.5).unwrap()).collect();
    let field = residual_massive(&window, EXEC).unwrap().max_abs;
    let operator = residual_operator_form(&window, EXEC).unwrap().max_abs;
    assert!(field < 1e-8);
    assert!(operator > 0.1, "operator-form residual {operator}");
}

#[test]
fn zero_field_has_zero_kg_residual() {
    let s = FieldState::new(vec![DiracFieldValue::ZERO; 8], 0.5, 0.0, 1.0, 0.0, Potential::Zero).unwrap();
    let traj = evolve(&s, 0.01, 4, 1, EXEC).unwrap();
    assert_eq!(kg_residual(&traj).unwrap(), 0.0);
}

#[test]
fn evolved_snapshot_round_trips_through_a_file() {
    let s0 = RestOscillator { omega0: 1.0 }.sample(0.0, 8, 0.5).unwrap();
    let last = evolve(&s0, 0.01, 25, 25, EXEC).unwrap().pop().unwrap();
    let dir = tempfile::tempdir().unwrap();
    for body in [BodyEncoding::BinaryLeF64, BodyEncoding::Csv] {
        let path = dir.path().join("snap");
        save_snapshot(&path, &last, 0.01, body).unwrap();
        let (header, back) = load_snapshot(&path).unwrap();
        assert_eq!(back, last);
        assert_eq!(header.grid_n, 8);
        assert_eq!(header.scheme.time, "rk4");
    }
}
