//! Closed-form solutions and their images under the discrete symmetries.

use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::symmetry::{
    apply_cpt, parity_potential, parity_value, time_reversal_potential, time_reversal_value,
};

use super::residual::FieldJet;
use super::{FieldState, Potential};

/// An exact solution with analytic derivatives.
pub trait Solution: Sync {
    fn jet(&self, t: f64, z: f64) -> FieldJet;
    /// Lower-index potential at `(t, z)`.
    fn potential_at(&self, t: f64, z: f64) -> [f64; 4];
    fn omega0(&self) -> f64;
    fn charge(&self) -> f64;

    /// The potential as a grid preset, if it is expressible as one.
    fn potential(&self) -> Result<Potential>;

    fn value(&self, t: f64, z: f64) -> DiracFieldValue {
        self.jet(t, z).value
    }

    /// Samples the solution on an `n`-point grid at time `t`.
    fn sample(&self, t: f64, n: usize, dx: f64) -> Result<FieldState> {
        FieldState::from_fn(n, dx, t, self.omega0(), self.charge(), self.potential()?, |z| {
            self.value(t, z)
        })
    }
}

fn zero_grad() -> [DiracFieldValue; 4] {
    [DiracFieldValue::ZERO; 4]
}

/// `ψ_e = cos(ω₀t)`, `ψ_o = −sin(ω₀t) γ^0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestOscillator {
    pub omega0: f64,
}

impl Solution for RestOscillator {
    fn jet(&self, t: f64, _z: f64) -> FieldJet {
        let w = self.omega0;
        let (s, c) = (w * t).sin_cos();
        let g0 = Multivector::gamma(0);
        let value = DiracFieldValue::uncharged(Multivector::scalar(c), g0 * -s).unwrap();
        let mut grad = zero_grad();
        grad[0] = DiracFieldValue::uncharged(Multivector::scalar(-w * s), g0 * (-w * c)).unwrap();
        FieldJet { value, grad }
    }

    fn potential_at(&self, _t: f64, _z: f64) -> [f64; 4] {
        [0.0; 4]
    }

    fn omega0(&self) -> f64 {
        self.omega0
    }

    fn charge(&self) -> f64 {
        0.0
    }

    fn potential(&self) -> Result<Potential> {
        Ok(Potential::Zero)
    }
}

/// Vacuum wave along `+z`: `E_x = B_y = amplitude · cos(k(z − t))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmPlaneWave {
    pub amplitude: f64,
    pub k: f64,
}

impl EmPlaneWave {
    /// `E_x = F_{01}`, `B_y = F_{13}`.
    fn shape() -> Multivector {
        Multivector::gammas(&[0, 1]) + Multivector::gammas(&[1, 3])
    }
}

impl Solution for EmPlaneWave {
    fn jet(&self, t: f64, z: f64) -> FieldJet {
        let phase = self.k * (z - t);
        let shape = Self::shape();
        let even = |c: f64| DiracFieldValue::uncharged(shape * c, Multivector::zero()).unwrap();
        let ds = self.amplitude * self.k * phase.sin();
        let mut grad = zero_grad();
        grad[0] = even(ds);
        grad[3] = even(-ds);
        FieldJet {
            value: even(self.amplitude * phase.cos()),
            grad,
        }
    }

    fn potential_at(&self, _t: f64, _z: f64) -> [f64; 4] {
        [0.0; 4]
    }

    fn omega0(&self) -> f64 {
        0.0
    }

    fn charge(&self) -> f64 {
        0.0
    }

    fn potential(&self) -> Result<Potential> {
        Ok(Potential::Zero)
    }
}

/// `ψ_M = (cos Ωt − j sin Ωt)(1 + γ^0)` in the uniform potential `A = a0 γ^0`,
/// with `Ω = ω₀ + e·a0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargedRest {
    pub omega0: f64,
    pub charge: f64,
    pub a0: f64,
}

impl ChargedRest {
    pub fn frequency(&self) -> f64 {
        self.omega0 + self.charge * self.a0
    }
}

impl Solution for ChargedRest {
    fn jet(&self, t: f64, _z: f64) -> FieldJet {
        let w = self.frequency();
        let (s, c) = (w * t).sin_cos();
        let p = Multivector::one() + Multivector::gamma(0);
        let value = DiracFieldValue::from_psi_m(&ComplexMultivector::new(p * c, p * -s));
        let mut grad = zero_grad();
        grad[0] = DiracFieldValue::from_psi_m(&ComplexMultivector::new(p * (-w * s), p * (-w * c)));
        FieldJet { value, grad }
    }

    fn potential_at(&self, _t: f64, _z: f64) -> [f64; 4] {
        [self.a0, 0.0, 0.0, 0.0]
    }

    fn omega0(&self) -> f64 {
        self.omega0
    }

    fn charge(&self) -> f64 {
        self.charge
    }

    fn potential(&self) -> Result<Potential> {
        Ok(Potential::ConstA0 { a0: self.a0 })
    }
}

fn uniform_preset(p: &dyn Fn(f64, f64) -> [f64; 4], inner: Result<Potential>) -> Result<Potential> {
    match inner? {
        Potential::Zero => Ok(Potential::Zero),
        Potential::ConstA0 { .. } => {
            let a = p(0.0, 0.0);
            Ok(Potential::ConstA0 { a0: a[0] })
        }
        other => Err(Error::domain(format!(
            "transformed potential {} has no grid preset",
            other.tag()
        ))),
    }
}

/// `ψ_P(t, z) = γ^0 ψ(t, −z) γ^0`, a solution in the potential `(A_0, −A_i)(t, −z)`.
#[derive(Clone, Copy, Debug)]
pub struct Parity<S>(pub S);

impl<S: Solution> Solution for Parity<S> {
    fn jet(&self, t: f64, z: f64) -> FieldJet {
        let j = self.0.jet(t, -z);
        let mut grad = j.grad.map(|g| parity_value(&g));
        for g in grad.iter_mut().skip(1) {
            *g = g.scale(-1.0);
        }
        FieldJet {
            value: parity_value(&j.value),
            grad,
        }
    }

    fn potential_at(&self, t: f64, z: f64) -> [f64; 4] {
        parity_potential(self.0.potential_at(t, -z))
    }

    fn omega0(&self) -> f64 {
        self.0.omega0()
    }

    fn charge(&self) -> f64 {
        self.0.charge()
    }

    fn potential(&self) -> Result<Potential> {
        uniform_preset(&|t, z| self.potential_at(t, z), self.0.potential())
    }
}

/// `ψ^c`, a solution with the opposite charge.
#[derive(Clone, Copy, Debug)]
pub struct ChargeConj<S>(pub S);

impl<S: Solution> Solution for ChargeConj<S> {
    fn jet(&self, t: f64, z: f64) -> FieldJet {
        let j = self.0.jet(t, z);
        FieldJet {
            value: j.value.charge_conjugate(),
            grad: j.grad.map(|g| g.charge_conjugate()),
        }
    }

    fn potential_at(&self, t: f64, z: f64) -> [f64; 4] {
        self.0.potential_at(t, z)
    }

    fn omega0(&self) -> f64 {
        self.0.omega0()
    }

    fn charge(&self) -> f64 {
        -self.0.charge()
    }

    fn potential(&self) -> Result<Potential> {
        self.0.potential()
    }
}

/// `ψ_T(t, z) = −γ^0 I ψ^c(−t, z) I γ^0`, a solution with the same charge in
/// the potential `(A_0, −A_i)(−t, z)`.
#[derive(Clone, Copy, Debug)]
pub struct TimeReversal<S>(pub S);

impl<S: Solution> Solution for TimeReversal<S> {
    fn jet(&self, t: f64, z: f64) -> FieldJet {
        let j = self.0.jet(-t, z);
        let mut grad = j.grad.map(|g| time_reversal_value(&g));
        grad[0] = grad[0].scale(-1.0);
        FieldJet {
            value: time_reversal_value(&j.value),
            grad,
        }
    }

    fn potential_at(&self, t: f64, z: f64) -> [f64; 4] {
        time_reversal_potential(self.0.potential_at(-t, z))
    }

    fn omega0(&self) -> f64 {
        self.0.omega0()
    }

    fn charge(&self) -> f64 {
        self.0.charge()
    }

    fn potential(&self) -> Result<Potential> {
        uniform_preset(&|t, z| self.potential_at(t, z), self.0.potential())
    }
}

/// `−I ψ(−t, −z) I`, a solution with the opposite charge in the potential `A(−t, −z)`.
#[derive(Clone, Copy, Debug)]
pub struct Cpt<S>(pub S);

impl<S: Solution> Solution for Cpt<S> {
    fn jet(&self, t: f64, z: f64) -> FieldJet {
        let j = self.0.jet(-t, -z);
        FieldJet {
            value: apply_cpt(&j.value),
            grad: j.grad.map(|g| apply_cpt(&g).scale(-1.0)),
        }
    }

    fn potential_at(&self, t: f64, z: f64) -> [f64; 4] {
        self.0.potential_at(-t, -z)
    }

    fn omega0(&self) -> f64 {
        self.0.omega0()
    }

    fn charge(&self) -> f64 {
        -self.0.charge()
    }

    fn potential(&self) -> Result<Potential> {
        uniform_preset(&|t, z| self.potential_at(t, z), self.0.potential())
    }
}
