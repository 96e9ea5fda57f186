//! Real multivectors of Cl(1,3).

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::blade::{BladeIndex, BladeTable, BLADE_COUNT};
use crate::error::{Error, Result};

/// A real multivector: 16 coefficients over the canonical blades, indexed by
/// blade mask.
///
/// Coefficient `k` multiplies the ascending product of the upper-index
/// vectors named by the bits of `k`. The pseudoscalar is
/// `I = γ_0γ_1γ_2γ_3 = −γ^0γ^1γ^2γ^3`, so `g I` is stored as `−g` in slot 15.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector {
    pub coeffs: [f64; BLADE_COUNT],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector {
        coeffs: [0.0; BLADE_COUNT],
    };

    pub fn new(coeffs: [f64; BLADE_COUNT]) -> Self {
        Multivector { coeffs }
    }

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    pub fn scalar(s: f64) -> Self {
        Self::blade(BladeIndex::SCALAR, s)
    }

    pub fn blade(b: BladeIndex, c: f64) -> Self {
        let mut m = Self::ZERO;
        m.coeffs[b.index()] = c;
        m
    }

    /// The basis vector `γ^mu`.
    pub fn gamma(mu: usize) -> Self {
        Self::blade(BladeIndex::vector(mu), 1.0)
    }

    /// Product of basis vectors in the given order, e.g. `gammas(&[2, 1])` is `γ^2γ^1`.
    pub fn gammas(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::one(), |acc, &mu| acc * Self::gamma(mu))
    }

    /// The pseudoscalar `I = γ_0γ_1γ_2γ_3`.
    pub fn pseudoscalar() -> Self {
        Self::blade(BladeIndex::TOP, -1.0)
    }

    /// Vector `v_μ γ^μ` from lower-index components.
    pub fn from_vector(v: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (mu, c) in v.iter().enumerate() {
            m.coeffs[1 << mu] = *c;
        }
        m
    }

    #[inline]
    pub fn get(&self, b: BladeIndex) -> f64 {
        self.coeffs[b.index()]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Geometric product against an explicit sign table.
    pub fn product_with(&self, other: &Multivector, table: &BladeTable) -> Multivector {
        let mut out = [0.0; BLADE_COUNT];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                out[a ^ b] += table.sign_raw(a, b) * ca * cb;
            }
        }
        Multivector { coeffs: out }
    }

    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        self.product_with(other, BladeTable::canonical())
    }

    /// `c · blade(b) · self`, in O(16).
    pub fn left_mul_blade(&self, b: BladeIndex, c: f64) -> Multivector {
        let table = BladeTable::canonical();
        let mut out = [0.0; BLADE_COUNT];
        let bi = b.index();
        for (a, &ca) in self.coeffs.iter().enumerate() {
            out[bi ^ a] += c * table.sign_raw(bi, a) * ca;
        }
        Multivector { coeffs: out }
    }

    /// `self · c · blade(b)`, in O(16).
    pub fn right_mul_blade(&self, b: BladeIndex, c: f64) -> Multivector {
        let table = BladeTable::canonical();
        let mut out = [0.0; BLADE_COUNT];
        let bi = b.index();
        for (a, &ca) in self.coeffs.iter().enumerate() {
            out[a ^ bi] += c * table.sign_raw(a, bi) * ca;
        }
        Multivector { coeffs: out }
    }

    /// Outer product. For two vectors this is `½(ab − ba)`.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let table = BladeTable::canonical();
        let mut out = [0.0; BLADE_COUNT];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if a & b == 0 {
                    out[a | b] += table.sign_raw(a, b) * ca * cb;
                }
            }
        }
        Multivector { coeffs: out }
    }

    pub fn reverse(&self) -> Multivector {
        self.map_blades(|b, c| b.reverse_sign() * c)
    }

    /// Negates odd grades. Equal to `−I a I`.
    pub fn grade_involution(&self) -> Multivector {
        self.map_blades(|b, c| if b.grade() % 2 == 1 { -c } else { c })
    }

    pub fn grade_project(&self, k: usize) -> Result<Multivector> {
        if k > 4 {
            return Err(Error::domain(format!("grade {k} outside 0..=4")));
        }
        Ok(self.grade(k))
    }

    /// Infallible grade projection for internal callers with a known grade.
    pub(crate) fn grade(&self, k: usize) -> Multivector {
        self.map_blades(|b, c| if b.grade() == k { c } else { 0.0 })
    }

    pub fn even(&self) -> Multivector {
        self.map_blades(|b, c| if b.grade() % 2 == 0 { c } else { 0.0 })
    }

    pub fn odd(&self) -> Multivector {
        self.map_blades(|b, c| if b.grade() % 2 == 1 { c } else { 0.0 })
    }

    pub fn is_even(&self) -> bool {
        BladeIndex::all().all(|b| b.grade() % 2 == 0 || self.get(b) == 0.0)
    }

    pub fn is_odd(&self) -> bool {
        BladeIndex::all().all(|b| b.grade() % 2 == 1 || self.get(b) == 0.0)
    }

    pub fn is_bivector(&self) -> bool {
        BladeIndex::all().all(|b| b.grade() == 2 || self.get(b) == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    fn map_blades(&self, f: impl Fn(BladeIndex, f64) -> f64) -> Multivector {
        let mut out = *self;
        for b in BladeIndex::all() {
            out.coeffs[b.index()] = f(b, self.coeffs[b.index()]);
        }
        out
    }

    /// Exponential of a bivector by scaling and squaring of the power series.
    pub fn exp_bivector(&self) -> Result<Multivector> {
        if !self.is_bivector() {
            return Err(Error::domain(
                "exp_bivector requires a pure grade-2 multivector",
            ));
        }
        let mut squarings = 0u32;
        let mut scale = 1.0;
        let m = self.max_abs();
        while m * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let x = *self * scale;
        let mut sum = Multivector::one();
        let mut term = Multivector::one();
        for n in 1..64 {
            term = (term * x) * (1.0 / n as f64);
            if term.max_abs() < 1e-16 {
                sum += term;
                break;
            }
            sum += term;
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        Ok(sum)
    }
}

impl Index<BladeIndex> for Multivector {
    type Output = f64;
    fn index(&self, b: BladeIndex) -> &f64 {
        &self.coeffs[b.index()]
    }
}

impl IndexMut<BladeIndex> for Multivector {
    fn index_mut(&mut self, b: BladeIndex) -> &mut f64 {
        &mut self.coeffs[b.index()]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        for c in self.coeffs.iter_mut() {
            *c *= s;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, m: Multivector) -> Multivector {
        m * self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(mu: usize) -> Multivector {
        Multivector::gamma(mu)
    }

    #[test]
    fn basis_squares() {
        assert_eq!(g(1) * g(1), Multivector::scalar(-1.0));
        assert_eq!(g(0) * g(0), Multivector::one());
        let i = Multivector::pseudoscalar();
        assert_eq!(i * i, Multivector::scalar(-1.0));
        let g21 = g(2) * g(1);
        assert_eq!(g21 * g21, Multivector::scalar(-1.0));
    }

    #[test]
    fn pseudoscalar_is_product_of_lower_index_vectors() {
        // γ_0 = γ^0, γ_i = −γ^i.
        let lower = g(0) * (-1.0 * g(1)) * (-1.0 * g(2)) * (-1.0 * g(3));
        assert_eq!(lower, Multivector::pseudoscalar());
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(g(1).wedge(&g(2)), g(1) * g(2));
        assert_eq!(g(1).wedge(&g(1)), Multivector::zero());
        // (γ^0 + γ^1) ∧ γ^0 = γ^1 ∧ γ^0 = −γ^0γ^1
        let w = (g(0) + g(1)).wedge(&g(0));
        assert_eq!(w, -1.0 * (g(0) * g(1)));
        let a = g(0) + g(1);
        let b = g(0);
        let anti = (a * b - b * a) * 0.5;
        assert_eq!(w, anti);
    }

    #[test]
    fn reverse_examples() {
        let b21 = g(2).wedge(&g(1));
        assert_eq!(b21.reverse(), -1.0 * b21);
        let x = Multivector::one() + g(0);
        assert_eq!(x.reverse(), x);
        let i = Multivector::pseudoscalar();
        assert_eq!(i.reverse(), i);
    }

    #[test]
    fn grade_projection() {
        let f = 1.5;
        let gg = -0.25;
        let x = Multivector::scalar(f) + Multivector::pseudoscalar() * gg;
        assert_eq!(x.grade_project(0).unwrap(), Multivector::scalar(f));
        let y = g(0) + g(2) * g(1);
        assert_eq!(y.grade_project(2).unwrap(), g(2) * g(1));
        assert!(matches!(y.grade_project(5), Err(Error::Domain(_))));
        let total = (0..=4).fold(Multivector::zero(), |acc, k| {
            acc + y.grade_project(k).unwrap()
        });
        assert_eq!(total, y);
    }

    #[test]
    fn grade_involution_matches_pseudoscalar_sandwich() {
        let i = Multivector::pseudoscalar();
        let mut x = Multivector::zero();
        for (k, c) in x.coeffs.iter_mut().enumerate() {
            *c = k as f64 - 7.5;
        }
        assert_eq!(x.grade_involution(), -1.0 * (i * x * i));
    }

    #[test]
    fn blade_fast_paths_match_full_product() {
        let mut x = Multivector::zero();
        for (k, c) in x.coeffs.iter_mut().enumerate() {
            *c = (k as f64 * 0.37).sin();
        }
        for b in BladeIndex::all() {
            let bm = Multivector::blade(b, 2.0);
            assert_eq!(x.left_mul_blade(b, 2.0), bm * x);
            assert_eq!(x.right_mul_blade(b, 2.0), x * bm);
        }
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(Multivector::zero().exp_bivector().unwrap(), Multivector::one());
    }

    #[test]
    fn exp_simple_rotation_blade() {
        let b12 = g(1) * g(2);
        let r = (b12 * std::f64::consts::FRAC_PI_2).exp_bivector().unwrap();
        assert!(r.max_abs_diff(&b12) < 1e-15);
    }

    #[test]
    fn exp_simple_boost_blade() {
        let b10 = g(1) * g(0);
        let a: f64 = 0.3;
        let r = (b10 * a).exp_bivector().unwrap();
        let expected = Multivector::scalar(a.cosh()) + b10 * a.sinh();
        assert!(r.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn exp_rejects_non_bivector() {
        assert!(matches!(
            (g(0) + g(1) * g(2)).exp_bivector(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exp_large_argument_uses_squaring() {
        let b12 = g(1) * g(2);
        let theta: f64 = 7.3;
        let r = (b12 * theta).exp_bivector().unwrap();
        let expected = Multivector::scalar(theta.cos()) + b12 * theta.sin();
        assert!(r.max_abs_diff(&expected) < 1e-13);
    }
}
