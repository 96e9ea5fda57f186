//! Lorentz rotors and the discrete C, P, T transformations.
//!
//! Grid-level parity and time reversal act on the field only. The potential
//! carried by a [`FieldState`] is left untouched; use [`parity_potential`] and
//! [`time_reversal_potential`] to build the transformed background when a test
//! needs it.

use crate::blade::BladeIndex;
use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::components::Tensor2;
use crate::dynamics::FieldState;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::rep::{rep_table, Bispinor4};

use num_complex::Complex64;

/// Tolerance on `R R̃ = 1` when accepting an arbitrary even multivector as a rotor.
pub const ROTOR_TOL: f64 = 1e-12;

/// A Lorentz rotor `R` with its cached reverse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotor {
    r: Multivector,
    r_rev: Multivector,
}

impl Rotor {
    pub fn identity() -> Self {
        Rotor {
            r: Multivector::one(),
            r_rev: Multivector::one(),
        }
    }

    /// `R = exp(−¼ ω_{μν} γ^μ∧γ^ν)` for an antisymmetric lower-index `ω`.
    ///
    /// `ω_{0i} > 0` boosts along `+i`; `ω_{ba} = θ` rotates `γ^a` towards `γ^b`.
    pub fn from_parameters(omega: &Tensor2) -> Result<Self> {
        let mut b = Multivector::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                if omega[mu][nu] != -omega[nu][mu] {
                    return Err(Error::domain(format!(
                        "rotor parameters must be antisymmetric (entry {mu},{nu})"
                    )));
                }
                if mu < nu {
                    // ω_{μν}γ^μ∧γ^ν + ω_{νμ}γ^ν∧γ^μ = 2ω_{μν}γ^μγ^ν
                    b[BladeIndex::bivector(mu, nu)] += -0.5 * omega[mu][nu];
                }
            }
        }
        let r = b.exp_bivector()?;
        Ok(Rotor {
            r,
            r_rev: r.reverse(),
        })
    }

    /// Boost with the given rapidity along spatial axis `axis ∈ {1, 2, 3}`.
    pub fn boost(axis: usize, rapidity: f64) -> Result<Self> {
        if !(1..=3).contains(&axis) {
            return Err(Error::domain(format!("boost axis {axis} not in 1..=3")));
        }
        let mut omega = [[0.0; 4]; 4];
        omega[0][axis] = rapidity;
        omega[axis][0] = -rapidity;
        Self::from_parameters(&omega)
    }

    /// Rotation by `angle` taking `γ^a` towards `γ^b`.
    pub fn rotation(a: usize, b: usize, angle: f64) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a > 3 || b > 3 {
            return Err(Error::domain(format!(
                "rotation plane ({a}, {b}) must be two distinct spatial axes"
            )));
        }
        let mut omega = [[0.0; 4]; 4];
        omega[b][a] = angle;
        omega[a][b] = -angle;
        Self::from_parameters(&omega)
    }

    /// Accepts an even multivector with `R R̃ = 1`.
    pub fn from_multivector(r: Multivector) -> Result<Self> {
        if !r.is_even() {
            return Err(Error::domain("a rotor must be even"));
        }
        let r_rev = r.reverse();
        let err = (r * r_rev).max_abs_diff(&Multivector::one());
        if err > ROTOR_TOL {
            return Err(Error::domain(format!("R R̃ differs from 1 by {err:e}")));
        }
        Ok(Rotor { r, r_rev })
    }

    pub fn multivector(&self) -> &Multivector {
        &self.r
    }

    /// `R̃`, which is itself a rotor.
    pub fn reverse(&self) -> Rotor {
        Rotor {
            r: self.r_rev,
            r_rev: self.r,
        }
    }

    /// `self` applied after `first`.
    pub fn compose(&self, first: &Rotor) -> Rotor {
        let r = self.r * first.r;
        Rotor {
            r,
            r_rev: r.reverse(),
        }
    }

    /// `R m R̃`.
    pub fn transform_multivector(&self, m: &Multivector) -> Multivector {
        self.r * *m * self.r_rev
    }

    /// Transforms a vector given by its contravariant components.
    pub fn transform_vector_upper(&self, v_upper: [f64; 4]) -> [f64; 4] {
        let lower = crate::components::raise_vector(v_upper);
        let out = self.transform_multivector(&Multivector::from_vector(lower));
        crate::components::raise_vector([0, 1, 2, 3].map(|mu| out.get(BladeIndex::vector(mu))))
    }
}

/// Two-sided law `ψ_M → S ψ_M S̃` on every constituent.
pub fn transform_field(s: &Rotor, v: &DiracFieldValue) -> DiracFieldValue {
    v.map_parity_preserving(|m| s.transform_multivector(m))
}

/// One-sided law `ψ_M → S ψ_M`, the multivector form of `ψ → Sψ` with `w` fixed.
pub fn transform_spinor_field(s: &Rotor, v: &DiracFieldValue) -> DiracFieldValue {
    v.map_parity_preserving(|m| s.r * *m)
}

/// `γ^0 m γ^0`.
pub fn parity_conjugate(m: &Multivector) -> Multivector {
    let g0 = BladeIndex::vector(0);
    m.left_mul_blade(g0, 1.0).right_mul_blade(g0, 1.0)
}

/// `−γ^0 I m I γ^0`, the time-reversal conjugation without the charge flip.
pub fn time_reversal_conjugate(m: &Multivector) -> Multivector {
    // γ^0 I = −γ^0 · TOP and I γ^0 = −TOP · γ^0, so the signs cancel into one −1.
    let g0 = BladeIndex::vector(0);
    m.left_mul_blade(BladeIndex::TOP, 1.0)
        .left_mul_blade(g0, -1.0)
        .right_mul_blade(BladeIndex::TOP, 1.0)
        .right_mul_blade(g0, 1.0)
}

/// Charge conjugation `ψ_M → ψ^c_M`.
pub fn apply_c(v: &DiracFieldValue) -> DiracFieldValue {
    v.charge_conjugate()
}

/// Pointwise parity, without the spatial reflection of the argument.
pub fn parity_value(v: &DiracFieldValue) -> DiracFieldValue {
    v.map_parity_preserving(parity_conjugate)
}

/// Pointwise time reversal `−γ^0 I ψ^c_M I γ^0`, without the argument flip.
pub fn time_reversal_value(v: &DiracFieldValue) -> DiracFieldValue {
    v.charge_conjugate().map_parity_preserving(time_reversal_conjugate)
}

/// Pointwise CPT: `−I ψ_M I`.
pub fn apply_cpt(v: &DiracFieldValue) -> DiracFieldValue {
    v.map_parity_preserving(Multivector::grade_involution)
}

/// Potential seen by the parity image at the reflected point: `(A_0, −A_i)`.
pub fn parity_potential(a_lower: [f64; 4]) -> [f64; 4] {
    [a_lower[0], -a_lower[1], -a_lower[2], -a_lower[3]]
}

/// Potential seen by the time-reversed field at the reversed time: `(A_0, −A_i)`.
pub fn time_reversal_potential(a_lower: [f64; 4]) -> [f64; 4] {
    parity_potential(a_lower)
}

/// Index of `−z_k` on a periodic grid with `z_k = k·dx`.
pub(crate) fn reflected_index(k: usize, n: usize) -> usize {
    (n - k) % n
}

fn require_even(state: &FieldState) -> Result<()> {
    if state.len() % 2 != 0 {
        return Err(Error::domain(format!(
            "spatial reflection needs an even grid, got {} points",
            state.len()
        )));
    }
    Ok(())
}

/// Parity on a grid: `ψ_P(t, z) = γ^0 ψ(t, −z) γ^0`.
pub fn apply_p(state: &FieldState) -> Result<FieldState> {
    require_even(state)?;
    let n = state.len();
    let values = (0..n)
        .map(|k| parity_value(&state.values()[reflected_index(k, n)]))
        .collect();
    state.with_values(values, state.t)
}

/// Time reversal of a snapshot: the returned state sits at time `−t`.
pub fn apply_t(state: &FieldState) -> Result<FieldState> {
    let values = state.values().iter().map(time_reversal_value).collect();
    state.with_values(values, -state.t)
}

/// CPT of a snapshot: pointwise `−I ψ I` at `(−t, −z)`.
pub fn apply_cpt_state(state: &FieldState) -> Result<FieldState> {
    require_even(state)?;
    let n = state.len();
    let values = (0..n)
        .map(|k| apply_cpt(&state.values()[reflected_index(k, n)]))
        .collect();
    state.with_values(values, -state.t)
}

/// One of the discrete transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryLabel {
    C,
    P,
    T,
    Cpt,
}

impl SymmetryLabel {
    pub fn apply(self, state: &FieldState) -> Result<FieldState> {
        match self {
            SymmetryLabel::C => {
                let values = state.values().iter().map(apply_c).collect();
                state.with_values(values, state.t)
            }
            SymmetryLabel::P => apply_p(state),
            SymmetryLabel::T => apply_t(state),
            SymmetryLabel::Cpt => apply_cpt_state(state),
        }
    }
}

/// Applies a composition of labels, rightmost first.
pub fn apply_sequence(labels: &[SymmetryLabel], state: &FieldState) -> Result<FieldState> {
    labels
        .iter()
        .rev()
        .try_fold(state.clone(), |s, label| label.apply(&s))
}

/// Spinor charge conjugation `ψ → iγ^2 ψ*`.
pub fn spinor_charge_conjugate(s: &Bispinor4) -> Bispinor4 {
    let g2 = rep_table().dirac4(BladeIndex::vector(2));
    Bispinor4(g2 * s.conj().0 * Complex64::new(0.0, 1.0))
}

/// Spinor parity `ψ → γ^0 ψ`.
pub fn spinor_parity(s: &Bispinor4) -> Bispinor4 {
    Bispinor4(rep_table().dirac4(BladeIndex::vector(0)) * s.0)
}

/// The operator-interpretation form of charge conjugation, `ψ_M → −ψ_M γ^1γ^0`.
pub fn operator_charge_conjugate(m: &ComplexMultivector) -> ComplexMultivector {
    m.right_mul_real(&Multivector::gammas(&[1, 0])).scale(-1.0)
}
