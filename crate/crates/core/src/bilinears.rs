//! Current and spin densities.
//!
//! With `ψ_M = R + jJ` and `P = 1 + γ^0`, every observable is a sandwich of
//! the real and `j` parts around a fixed reference built from `P`:
//!
//! * current `j = ⟨R P R̃ + J P J̃⟩₁`;
//! * geometric spin `S^{0ij} = ½⟨(R γ^2γ^1 P R̃ + J γ^2γ^1 P J̃) γ^0 (γ^i∧γ^j)⟩`;
//! * non-geometric spin `S^{0ij} = ½⟨(R P J̃ − J P R̃) γ^0 (γ^i∧γ^j)⟩`.
//!
//! For an uncharged field `R = ψ_e` and `J = ψ_o`, and these reduce to
//! `ψ_eγ^0ψ̃_e + ψ_oγ^0ψ̃_o` and its spin analogues. For charged fields `R`
//! and `J` mix primed and unprimed constituents, so the cross terms between
//! `ψ₁` and `ψ₂` are whatever this sandwich produces. The same values come out
//! of the spinor sandwich `ψ̄ M ψ`, which [`current_via`] and friends evaluate
//! independently.

use crate::blade::{BladeIndex, METRIC};
use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::dynamics::{first_derivative, time_derivative, uniform_spacing, FieldState};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::rep::{bilinear_extract, bilinear_extract_via, BilinearPath};
use crate::symmetry::Rotor;

/// Spatial planes of the three spin components, in output order
/// `S^{012}`, `S^{023}`, `S^{031}`.
pub const SPIN_PLANES: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinConstruction {
    /// Uses the reference pseudovector `γ^2γ^1γ^0`.
    Geometric,
    /// Uses the unit `j` and mixes even and odd grades.
    NonGeometric,
}

/// Current `j^μ` (contravariant) and spin `S^{0ij}` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearSet {
    pub current: [f64; 4],
    pub spin: [f64; 3],
    pub construction: SpinConstruction,
}

fn projector() -> Multivector {
    Multivector::one() + Multivector::gamma(0)
}

fn spin_plane(i: usize, j: usize) -> Multivector {
    Multivector::gamma(i).wedge(&Multivector::gamma(j))
}

fn upper_components(v: &Multivector) -> [f64; 4] {
    [0, 1, 2, 3].map(|mu| METRIC[mu] * v.get(BladeIndex::vector(mu)))
}

fn current_from_reference(v: &DiracFieldValue, reference: &Multivector) -> [f64; 4] {
    let psi = v.psi_m();
    let sum = psi.re * *reference * psi.re.reverse() + psi.im * *reference * psi.im.reverse();
    upper_components(&sum)
}

/// `j^μ` from the multivector sandwich.
pub fn current(v: &DiracFieldValue) -> [f64; 4] {
    current_from_reference(v, &projector())
}

/// Current of a field whose reference frame has been rotated by `frame`:
/// the projector becomes `S (1 + γ^0) S̃`. Pairs with the two-sided law
/// [`transform_field`](crate::symmetry::transform_field).
pub fn current_with_reference(v: &DiracFieldValue, frame: &Rotor) -> [f64; 4] {
    current_from_reference(v, &frame.transform_multivector(&projector()))
}

fn spin_from(weighted: &Multivector) -> [f64; 3] {
    let g0 = Multivector::gamma(0);
    SPIN_PLANES.map(|(i, j)| 0.5 * (*weighted * g0 * spin_plane(i, j)).scalar_part())
}

/// `S^{0ij}` using the reference pseudovector.
pub fn spin_geometric(v: &DiracFieldValue) -> [f64; 3] {
    let psi = v.psi_m();
    let core = Multivector::gammas(&[2, 1]) * projector();
    let sum = psi.re * core * psi.re.reverse() + psi.im * core * psi.im.reverse();
    spin_from(&sum)
}

/// `S^{0ij}` using the unit `j`.
pub fn spin_nongeometric(v: &DiracFieldValue) -> [f64; 3] {
    let psi = v.psi_m();
    let p = projector();
    let sum = psi.re * p * psi.im.reverse() - psi.im * p * psi.re.reverse();
    spin_from(&sum)
}

pub fn bilinears(v: &DiracFieldValue, construction: SpinConstruction) -> BilinearSet {
    let spin = match construction {
        SpinConstruction::Geometric => spin_geometric(v),
        SpinConstruction::NonGeometric => spin_nongeometric(v),
    };
    BilinearSet {
        current: current(v),
        spin,
        construction,
    }
}

fn spinor_operands(v: &DiracFieldValue) -> (ComplexMultivector, ComplexMultivector, ComplexMultivector) {
    let psi = v.psi_m();
    let geometric = psi.right_mul_real(&Multivector::gammas(&[2, 1]));
    let with_j = psi * ComplexMultivector::j();
    (psi, geometric, with_j)
}

fn gamma0_plane(i: usize, j: usize) -> ComplexMultivector {
    ComplexMultivector::real(Multivector::gamma(0) * spin_plane(i, j))
}

/// `ψ̄ γ^μ ψ` along one spinor path.
pub fn current_via(path: BilinearPath, v: &DiracFieldValue) -> [f64; 4] {
    let (psi, _, _) = spinor_operands(v);
    [0, 1, 2, 3].map(|mu| {
        let m = ComplexMultivector::real(Multivector::gamma(mu));
        bilinear_extract_via(path, &m, &psi, &psi).value.re
    })
}

/// `½ ψ̄ γ^0(γ^i∧γ^j) (ψ_M γ^2γ^1 w)` along one spinor path.
pub fn spin_geometric_via(path: BilinearPath, v: &DiracFieldValue) -> [f64; 3] {
    let (psi, geometric, _) = spinor_operands(v);
    SPIN_PLANES.map(|(i, j)| 0.5 * bilinear_extract_via(path, &gamma0_plane(i, j), &psi, &geometric).value.re)
}

/// `½ ψ̄ γ^0(γ^i∧γ^j) (ψ_M j w)` along one spinor path.
pub fn spin_nongeometric_via(path: BilinearPath, v: &DiracFieldValue) -> [f64; 3] {
    let (psi, _, with_j) = spinor_operands(v);
    SPIN_PLANES.map(|(i, j)| 0.5 * bilinear_extract_via(path, &gamma0_plane(i, j), &psi, &with_j).value.re)
}

/// Current computed through [`bilinear_extract`], which fails if the spinor
/// paths disagree, and compared against the multivector sandwich.
pub fn current_checked(v: &DiracFieldValue) -> Result<[f64; 4]> {
    let (psi, _, _) = spinor_operands(v);
    let direct = current(v);
    let mut out = [0.0; 4];
    for mu in 0..4 {
        let m = ComplexMultivector::real(Multivector::gamma(mu));
        out[mu] = bilinear_extract(&m, &psi, &psi)?.value.re;
        let scale = 1.0 + direct[mu].abs();
        if (out[mu] - direct[mu]).abs() > 1e-10 * scale {
            return Err(Error::consistency(format!(
                "current component {mu}: spinor {} vs multivector {}",
                out[mu], direct[mu]
            )));
        }
    }
    Ok(out)
}

/// Current of the even sector `f + ½F_{μν}γ^μ∧γ^ν + gI` in terms of `E` and `B`:
/// `j^0 = f² + g² + E² + B²`, `j^i = 2(fE + gB + E×B)_i`.
pub fn even_sector_current(f: f64, e: [f64; 3], b: [f64; 3], g: f64) -> [f64; 4] {
    let cross = [
        e[1] * b[2] - e[2] * b[1],
        e[2] * b[0] - e[0] * b[2],
        e[0] * b[1] - e[1] * b[0],
    ];
    let sq = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>();
    let mut j = [f * f + g * g + sq(e) + sq(b), 0.0, 0.0, 0.0];
    for i in 0..3 {
        j[i + 1] = 2.0 * (f * e[i] + g * b[i] + cross[i]);
    }
    j
}

/// `S^{012} = ½(f² + g² − E² − B² + 2E₃² + 2B₃²)` for the even sector.
pub fn even_sector_spin_z(f: f64, e: [f64; 3], b: [f64; 3], g: f64) -> f64 {
    let sq = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>();
    0.5 * (f * f + g * g - sq(e) - sq(b) + 2.0 * e[2] * e[2] + 2.0 * b[2] * b[2])
}

/// Max over the grid of `|∂_μ j^μ|`, using centered differences in time and
/// fourth-order differences in `z`. With five or more slices the time
/// derivative is fourth order; with three or four it is second order.
pub fn current_conservation_residual(slices: &[FieldState]) -> Result<f64> {
    if slices.len() < 3 {
        return Err(Error::domain(format!(
            "current conservation needs at least 3 time slices, got {}",
            slices.len()
        )));
    }
    let dt = uniform_spacing(slices)?;
    let currents: Vec<Vec<[f64; 4]>> = slices
        .iter()
        .map(|s| s.values().iter().map(current).collect())
        .collect();
    let half = if slices.len() >= 5 { 2 } else { 1 };
    let n = slices[0].len();
    let dx = slices[0].dx;
    let mut worst = 0.0f64;
    let mut samples = Vec::with_capacity(2 * half + 1);
    for c in half..slices.len() - half {
        let j3: Vec<f64> = currents[c].iter().map(|j| j[3]).collect();
        for k in 0..n {
            samples.clear();
            samples.extend((c - half..=c + half).map(|s| currents[s][k][0]));
            let dj0 = time_derivative(&samples, dt)?;
            let dj3 = first_derivative(&j3, k, dx);
            worst = worst.max((dj0 + dj3).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::FieldComponents;
    use crate::dynamics::{Potential, RestOscillator, Solution};

    fn even_value(f: f64, e: [f64; 3], b: [f64; 3], g: f64) -> DiracFieldValue {
        let m = FieldComponents::from_even(f, e, b, g).to_multivector();
        DiracFieldValue::uncharged(m, Multivector::zero()).unwrap()
    }

    #[test]
    fn scalar_field_current() {
        assert_eq!(current(&even_value(1.0, [0.0; 3], [0.0; 3], 0.0)), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn poynting_example() {
        let j = current(&even_value(0.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 0.0));
        assert_eq!(j[0], 2.0);
        assert_eq!(j[3], 2.0);
        assert_eq!(j, even_sector_current(0.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 0.0));
    }

    #[test]
    fn spin_examples() {
        assert_eq!(spin_geometric(&even_value(1.0, [0.0; 3], [0.0; 3], 0.0))[0], 0.5);
        assert_eq!(spin_geometric(&even_value(0.0, [0.0, 0.0, 1.0], [0.0; 3], 0.0))[0], 0.5);
        assert_eq!(spin_geometric(&even_value(0.0, [1.0, 0.0, 0.0], [0.0; 3], 0.0))[0], -0.5);
    }

    #[test]
    fn nongeometric_spin_vanishes_without_odd_part() {
        let v = even_value(0.3, [0.1, -0.4, 0.2], [0.5, 0.0, -0.7], 0.9);
        assert_eq!(spin_nongeometric(&v), [0.0; 3]);
    }

    #[test]
    fn constructions_coincide_on_operator_constraint() {
        let mut rng = crate::random::seeded_rng(4);
        for _ in 0..10 {
            let e = crate::random::random_parity(&mut rng, true);
            let o = e * Multivector::gammas(&[2, 1, 0]);
            let v = DiracFieldValue::uncharged(e, o).unwrap();
            let (g, n) = (spin_geometric(&v), spin_nongeometric(&v));
            let same = (0..3).all(|k| (g[k] - n[k]).abs() < 1e-12);
            let flipped = (0..3).all(|k| (g[k] + n[k]).abs() < 1e-12);
            assert!(same || flipped, "{g:?} vs {n:?}");
        }
    }

    #[test]
    fn j_phase_leaves_current_unchanged() {
        let mut rng = crate::random::seeded_rng(9);
        let v = crate::random::random_field_value(&mut rng);
        let rotated = DiracFieldValue::from_psi_m(&(v.psi_m() * ComplexMultivector::phase(0.7)));
        for (a, b) in current(&v).iter().zip(current(&rotated)) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn paths_agree_on_simple_field() {
        let v = DiracFieldValue::new(
            Multivector::one() * 0.4 + Multivector::gammas(&[1, 2]) * 0.3,
            Multivector::gamma(0) * 0.2 + Multivector::gamma(3) * -0.6,
            Multivector::gammas(&[0, 3]) * 0.5,
            Multivector::gamma(1) * 0.1,
        )
        .unwrap();
        for path in [BilinearPath::DiracSandwich, BilinearPath::GradeProjection, BilinearPath::Real16] {
            let c = current_via(path, &v);
            let s = spin_geometric_via(path, &v);
            let n = spin_nongeometric_via(path, &v);
            for mu in 0..4 {
                assert!((c[mu] - current(&v)[mu]).abs() < 1e-14);
            }
            for k in 0..3 {
                assert!((s[k] - spin_geometric(&v)[k]).abs() < 1e-14);
                assert!((n[k] - spin_nongeometric(&v)[k]).abs() < 1e-14);
            }
        }
        assert!(current_checked(&v).is_ok());
    }

    #[test]
    fn conservation_on_rest_oscillator() {
        let sol = RestOscillator { omega0: 1.0 };
        let slices: Vec<FieldState> = (0..5).map(|i| sol.sample(0.01 * i as f64, 8, 0.1).unwrap()).collect();
        assert!(current_conservation_residual(&slices).unwrap() < 1e-10);
        assert!(current_conservation_residual(&slices[..2]).is_err());
    }

    #[test]
    fn uniform_static_field_is_conserved() {
        let v = even_value(1.0, [0.0; 3], [0.0; 3], 0.0);
        let s = FieldState::new(vec![v; 8], 0.1, 0.0, 0.0, 0.0, Potential::Zero).unwrap();
        let slices: Vec<FieldState> = (0..3).map(|i| s.with_values(vec![v; 8], i as f64).unwrap()).collect();
        assert_eq!(current_conservation_residual(&slices).unwrap(), 0.0);
    }
}
