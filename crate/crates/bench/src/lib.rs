//! Fixtures shared by the benchmarks.

use std::f64::consts::PI;

use dirac_sta::dynamics::{EmPlaneWave, Solution};
use dirac_sta::random::{random_field_value, seeded_rng};
use dirac_sta::{DiracFieldValue, FieldState};

/// One wavelength of the vacuum plane wave on an `n`-point grid.
pub fn plane_wave_state(n: usize) -> FieldState {
    EmPlaneWave { amplitude: 1.0, k: 1.0 }
        .sample(0.0, n, 2.0 * PI / n as f64)
        .expect("valid grid")
}

/// Five consecutive slices of the plane wave, spaced at CFL 0.4.
pub fn plane_wave_window(n: usize) -> Vec<FieldState> {
    let dx = 2.0 * PI / n as f64;
    let wave = EmPlaneWave { amplitude: 1.0, k: 1.0 };
    (0..5)
        .map(|i| wave.sample(0.4 * dx * i as f64, n, dx).expect("valid grid"))
        .collect()
}

pub fn random_values(count: usize, seed: u64) -> Vec<DiracFieldValue> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| random_field_value(&mut rng)).collect()
}
