//! The complexified algebra ℂ ⊗ Cl(1,3).
//!
//! The unit `j` commutes with every blade and carries no geometric meaning.
//! It is distinct from the geometric imaginary `γ^2γ^1`, which squares to −1
//! but does not commute with the algebra.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::Multivector;

/// `re + j·im`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexMultivector {
    pub re: Multivector,
    pub im: Multivector,
}

impl ComplexMultivector {
    pub const ZERO: ComplexMultivector = ComplexMultivector {
        re: Multivector::ZERO,
        im: Multivector::ZERO,
    };

    pub fn new(re: Multivector, im: Multivector) -> Self {
        ComplexMultivector { re, im }
    }

    pub fn real(re: Multivector) -> Self {
        ComplexMultivector {
            re,
            im: Multivector::ZERO,
        }
    }

    /// The unit `j`.
    pub fn j() -> Self {
        ComplexMultivector {
            re: Multivector::ZERO,
            im: Multivector::one(),
        }
    }

    /// `cos θ + j sin θ`.
    pub fn phase(theta: f64) -> Self {
        ComplexMultivector::new(
            Multivector::scalar(theta.cos()),
            Multivector::scalar(theta.sin()),
        )
    }

    /// Flips the sign of `j`.
    pub fn j_conjugate(&self) -> Self {
        ComplexMultivector::new(self.re, -self.im)
    }

    /// Negates odd grades of both parts; equal to `−I a I`.
    pub fn grade_involute(&self) -> Self {
        ComplexMultivector::new(self.re.grade_involution(), self.im.grade_involution())
    }

    pub fn reverse(&self) -> Self {
        ComplexMultivector::new(self.re.reverse(), self.im.reverse())
    }

    /// Reverse combined with `j` conjugation: the multivector image of the
    /// Hermitian adjoint when `j` plays the role of the scalar imaginary unit.
    pub fn adjoint_reverse(&self) -> Self {
        ComplexMultivector::new(self.re.reverse(), -self.im.reverse())
    }

    /// `γ^2 I ā I γ^2`: the multivector whose Dirac-basis matrix is the
    /// entrywise complex conjugate of the matrix of `a` (with `j ↦ i`).
    pub fn complex_conjugate_geometric(&self) -> Self {
        let g2 = Multivector::gamma(2);
        let i = Multivector::pseudoscalar();
        let left = g2 * i;
        let right = i * g2;
        let bar = self.j_conjugate();
        left_mul(&left, &bar).right_mul_real(&right)
    }

    pub fn left_mul_real(&self, m: &Multivector) -> Self {
        left_mul(m, self)
    }

    pub fn right_mul_real(&self, m: &Multivector) -> Self {
        ComplexMultivector::new(self.re * *m, self.im * *m)
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMultivector::new(self.re * s, self.im * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn grade(&self, k: usize) -> Self {
        ComplexMultivector::new(self.re.grade(k), self.im.grade(k))
    }

    pub fn scalar_part(&self) -> (f64, f64) {
        (self.re.scalar_part(), self.im.scalar_part())
    }
}

fn left_mul(m: &Multivector, a: &ComplexMultivector) -> ComplexMultivector {
    ComplexMultivector::new(*m * a.re, *m * a.im)
}

impl From<Multivector> for ComplexMultivector {
    fn from(m: Multivector) -> Self {
        ComplexMultivector::real(m)
    }
}

impl Add for ComplexMultivector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexMultivector::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for ComplexMultivector {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for ComplexMultivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexMultivector::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for ComplexMultivector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for ComplexMultivector {
    type Output = Self;
    /// `(a + jb)(c + jd) = (ac − bd) + j(ad + bc)`.
    fn mul(self, rhs: Self) -> Self {
        ComplexMultivector::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<f64> for ComplexMultivector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// A Dirac field value `ψ_M = ψ₁ + jψ₂` with `ψ₁ = ψ_e + jψ_o` and
/// `ψ₂ = ψ'_e + jψ'_o`, stored as its four real constituents.
///
/// `ψ_e, ψ'_e` are even (grades 0, 2, 4); `ψ_o, ψ'_o` are odd (grades 1, 3).
/// Flattened, `ψ_M = (ψ_e − ψ'_o) + j(ψ_o + ψ'_e)`: the four constituents
/// are exactly the even and odd parts of the real and `j` parts.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct DiracFieldValue {
    psi_e: Multivector,
    psi_o: Multivector,
    psi_e_prime: Multivector,
    psi_o_prime: Multivector,
}

impl DiracFieldValue {
    pub const ZERO: DiracFieldValue = DiracFieldValue {
        psi_e: Multivector::ZERO,
        psi_o: Multivector::ZERO,
        psi_e_prime: Multivector::ZERO,
        psi_o_prime: Multivector::ZERO,
    };

    /// Fails unless the even constituents are exactly even and the odd ones
    /// exactly odd.
    pub fn new(
        psi_e: Multivector,
        psi_o: Multivector,
        psi_e_prime: Multivector,
        psi_o_prime: Multivector,
    ) -> Result<Self> {
        let checks = [
            ("psi_e", psi_e.is_even()),
            ("psi_o", psi_o.is_odd()),
            ("psi_e'", psi_e_prime.is_even()),
            ("psi_o'", psi_o_prime.is_odd()),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::domain(format!(
                "{name} has coefficients of the wrong grade parity"
            )));
        }
        Ok(DiracFieldValue {
            psi_e,
            psi_o,
            psi_e_prime,
            psi_o_prime,
        })
    }

    /// Uncharged value `ψ_e + jψ_o`.
    pub fn uncharged(psi_e: Multivector, psi_o: Multivector) -> Result<Self> {
        Self::new(psi_e, psi_o, Multivector::ZERO, Multivector::ZERO)
    }

    /// Parity-splitting constructor from the flattened form. Always succeeds.
    pub fn from_psi_m(m: &ComplexMultivector) -> Self {
        DiracFieldValue {
            psi_e: m.re.even(),
            psi_o_prime: -m.re.odd(),
            psi_o: m.im.odd(),
            psi_e_prime: m.im.even(),
        }
    }

    pub fn from_halves(psi1: &ComplexMultivector, psi2: &ComplexMultivector) -> Result<Self> {
        Self::new(psi1.re, psi1.im, psi2.re, psi2.im)
    }

    pub fn psi_e(&self) -> &Multivector {
        &self.psi_e
    }

    pub fn psi_o(&self) -> &Multivector {
        &self.psi_o
    }

    pub fn psi_e_prime(&self) -> &Multivector {
        &self.psi_e_prime
    }

    pub fn psi_o_prime(&self) -> &Multivector {
        &self.psi_o_prime
    }

    /// Constituents in storage order `[ψ_e, ψ_o, ψ'_e, ψ'_o]`.
    pub fn constituents(&self) -> [Multivector; 4] {
        [self.psi_e, self.psi_o, self.psi_e_prime, self.psi_o_prime]
    }

    /// Inverse of [`constituents`](Self::constituents), with the parity check.
    pub fn from_constituents(c: [Multivector; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn psi1(&self) -> ComplexMultivector {
        ComplexMultivector::new(self.psi_e, self.psi_o)
    }

    pub fn psi2(&self) -> ComplexMultivector {
        ComplexMultivector::new(self.psi_e_prime, self.psi_o_prime)
    }

    /// Flattened `ψ₁ + jψ₂`.
    pub fn psi_m(&self) -> ComplexMultivector {
        ComplexMultivector::new(
            self.psi_e - self.psi_o_prime,
            self.psi_o + self.psi_e_prime,
        )
    }

    pub fn is_uncharged(&self) -> bool {
        self.psi_e_prime == Multivector::ZERO && self.psi_o_prime == Multivector::ZERO
    }

    /// `ψ^c_M = ψ₁ − jψ₂`.
    pub fn charge_conjugate(&self) -> Self {
        DiracFieldValue {
            psi_e_prime: -self.psi_e_prime,
            psi_o_prime: -self.psi_o_prime,
            ..*self
        }
    }

    /// `ψ̄_M`: every `j` in the nested form flipped.
    pub fn bar(&self) -> Self {
        DiracFieldValue::from_psi_m(&self.psi_m().j_conjugate())
    }

    /// Applies a parity-preserving real linear map to each constituent.
    pub(crate) fn map_parity_preserving(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        DiracFieldValue {
            psi_e: f(&self.psi_e),
            psi_o: f(&self.psi_o),
            psi_e_prime: f(&self.psi_e_prime),
            psi_o_prime: f(&self.psi_o_prime),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_parity_preserving(|m| *m * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.constituents().iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// The 64 stored coefficients, constituent-major.
    pub fn to_flat(&self) -> [f64; 64] {
        let mut out = [0.0; 64];
        for (k, c) in self.constituents().iter().enumerate() {
            out[16 * k..16 * (k + 1)].copy_from_slice(&c.coeffs);
        }
        out
    }

    pub fn from_flat(x: &[f64]) -> Result<Self> {
        if x.len() != 64 {
            return Err(Error::domain(format!("expected 64 coefficients, got {}", x.len())));
        }
        let part = |k: usize| {
            let mut c = [0.0; 16];
            c.copy_from_slice(&x[16 * k..16 * (k + 1)]);
            Multivector::new(c)
        };
        Self::new(part(0), part(1), part(2), part(3))
    }
}

impl Add for DiracFieldValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DiracFieldValue {
            psi_e: self.psi_e + rhs.psi_e,
            psi_o: self.psi_o + rhs.psi_o,
            psi_e_prime: self.psi_e_prime + rhs.psi_e_prime,
            psi_o_prime: self.psi_o_prime + rhs.psi_o_prime,
        }
    }
}

impl Sub for DiracFieldValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

impl Mul<f64> for DiracFieldValue {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(mu: usize) -> Multivector {
        Multivector::gamma(mu)
    }

    #[test]
    fn j_squares_to_minus_one() {
        let j = ComplexMultivector::j();
        assert_eq!(j * j, ComplexMultivector::real(Multivector::scalar(-1.0)));
    }

    #[test]
    fn j_conjugate_examples() {
        let a = ComplexMultivector::new(Multivector::one(), g(0));
        assert_eq!(
            a.j_conjugate(),
            ComplexMultivector::new(Multivector::one(), -g(0))
        );
        let r = ComplexMultivector::real(g(1) + g(2) * g(3));
        assert_eq!(r.j_conjugate(), r);
    }

    #[test]
    fn grade_involute_examples() {
        let v = ComplexMultivector::real(g(0));
        assert_eq!(v.grade_involute(), ComplexMultivector::real(-g(0)));
        let fg = ComplexMultivector::real(Multivector::scalar(2.0) + Multivector::pseudoscalar() * 3.0);
        assert_eq!(fg.grade_involute(), fg);
        let i = Multivector::pseudoscalar();
        let b = g(2) * g(1);
        let via_product = -1.0 * (i * b * i);
        assert_eq!(via_product, b);
        assert_eq!(ComplexMultivector::real(b).grade_involute().re, via_product);
    }

    #[test]
    fn complex_conjugate_of_gamma2() {
        let c = ComplexMultivector::real(g(2)).complex_conjugate_geometric();
        assert_eq!(c, ComplexMultivector::real(-g(2)));
        let c0 = ComplexMultivector::real(g(0)).complex_conjugate_geometric();
        assert_eq!(c0, ComplexMultivector::real(g(0)));
    }

    #[test]
    fn parity_enforced() {
        assert!(matches!(
            DiracFieldValue::new(g(0), Multivector::zero(), Multivector::zero(), Multivector::zero()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DiracFieldValue::new(Multivector::one(), Multivector::one(), Multivector::zero(), Multivector::zero()),
            Err(Error::Domain(_))
        ));
        assert!(DiracFieldValue::new(Multivector::one(), g(0), g(1) * g(2), g(3)).is_ok());
    }

    #[test]
    fn charge_conjugate_examples() {
        let uncharged = DiracFieldValue::uncharged(Multivector::one(), g(0)).unwrap();
        assert_eq!(uncharged.charge_conjugate(), uncharged);
        let v = DiracFieldValue::new(
            Multivector::one(),
            Multivector::zero(),
            Multivector::one(),
            Multivector::zero(),
        )
        .unwrap();
        let c = v.charge_conjugate();
        assert_eq!(*c.psi_e(), Multivector::one());
        assert_eq!(*c.psi_e_prime(), -Multivector::one());
        assert_eq!(c.charge_conjugate(), v);
    }

    #[test]
    fn flattened_form_round_trips() {
        let v = DiracFieldValue::new(
            Multivector::one() + g(1) * g(2),
            g(0) * 0.5,
            Multivector::pseudoscalar() * 2.0,
            g(3) * -1.5,
        )
        .unwrap();
        assert_eq!(DiracFieldValue::from_psi_m(&v.psi_m()), v);
        // ψ₁ + jψ₂ with the complex product.
        let direct = v.psi1() + ComplexMultivector::j() * v.psi2();
        assert_eq!(direct, v.psi_m());
        assert_eq!(DiracFieldValue::from_flat(&v.to_flat()).unwrap(), v);
    }
}
