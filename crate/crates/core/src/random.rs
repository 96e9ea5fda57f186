//! Seeded random samples for property checks and the `random-seeded` preset.
//!
//! Everything draws from `ChaCha8Rng`, so a seed fixes the output on every
//! platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::BladeIndex;
use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::components::Tensor2;
use crate::multivector::Multivector;
use crate::rep::Bispinor4;
use crate::symmetry::Rotor;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coefficients uniform in `[-1, 1)` on every blade.
pub fn random_multivector(rng: &mut SeededRng) -> Multivector {
    Multivector::new(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// Coefficients uniform in `[-1, 1)` on the even or the odd blades only.
pub fn random_parity(rng: &mut SeededRng, even: bool) -> Multivector {
    let mut c = [0.0; 16];
    for b in BladeIndex::all() {
        if (b.grade() % 2 == 0) == even {
            c[b.index()] = rng.random_range(-1.0..1.0);
        }
    }
    Multivector::new(c)
}

pub fn random_complex_multivector(rng: &mut SeededRng) -> ComplexMultivector {
    ComplexMultivector::new(random_multivector(rng), random_multivector(rng))
}

/// All four constituents populated.
pub fn random_field_value(rng: &mut SeededRng) -> DiracFieldValue {
    DiracFieldValue::new(
        random_parity(rng, true),
        random_parity(rng, false),
        random_parity(rng, true),
        random_parity(rng, false),
    )
    .expect("parities are correct by construction")
}

pub fn random_uncharged_value(rng: &mut SeededRng) -> DiracFieldValue {
    DiracFieldValue::uncharged(random_parity(rng, true), random_parity(rng, false))
        .expect("parities are correct by construction")
}

pub fn random_bispinor(rng: &mut SeededRng) -> Bispinor4 {
    Bispinor4::new(std::array::from_fn(|_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }))
}

/// Rotor with the six independent parameters `ω_{μν}` uniform in `[-bound, bound]`.
pub fn random_rotor(rng: &mut SeededRng, bound: f64) -> Rotor {
    let mut omega: Tensor2 = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let w = rng.random_range(-bound..=bound);
            omega[mu][nu] = w;
            omega[nu][mu] = -w;
        }
    }
    Rotor::from_parameters(&omega).expect("antisymmetric by construction")
}
