//! Finite-difference stencils on the periodic grid.

use std::ops::{Add, Mul, Sub};

use crate::blade::BladeIndex;
use crate::complex::ComplexMultivector;
use crate::error::{Error, Result};

use super::FieldState;

fn wrap(k: usize, offset: isize, n: usize) -> usize {
    (k as isize + offset).rem_euclid(n as isize) as usize
}

/// Fourth-order central first derivative at point `k` of a periodic sequence.
pub fn first_derivative<T>(values: &[T], k: usize, dx: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let at = |o: isize| values[wrap(k, o, n)];
    ((at(1) - at(-1)) * 8.0 - (at(2) - at(-2))) * (1.0 / (12.0 * dx))
}

/// Fourth-order central second derivative at point `k` of a periodic sequence.
pub fn second_derivative<T>(values: &[T], k: usize, dx: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let at = |o: isize| values[wrap(k, o, n)];
    let c = at(0);
    (((at(1) - c) + (at(-1) - c)) * 16.0 - ((at(2) - c) + (at(-2) - c))) * (1.0 / (12.0 * dx * dx))
}

/// Centered time derivative at the middle of 3 or 5 equally spaced samples.
pub fn time_derivative<T>(samples: &[T], dt: f64) -> Result<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    match samples {
        [a, _, c] => Ok((*c - *a) * (0.5 / dt)),
        [a, b, _, d, e] => Ok(((*d - *b) * 8.0 - (*e - *a)) * (1.0 / (12.0 * dt))),
        _ => Err(Error::domain(format!(
            "time derivative needs 3 or 5 samples, got {}",
            samples.len()
        ))),
    }
}

/// `γ^μ ∂_μ ψ` from the four partial derivatives `∂_μ ψ`.
pub fn nabla(grad: &[ComplexMultivector; 4]) -> ComplexMultivector {
    let mut out = ComplexMultivector::ZERO;
    for (mu, g) in grad.iter().enumerate() {
        let b = BladeIndex::vector(mu);
        out.re += g.re.left_mul_blade(b, 1.0);
        out.im += g.im.left_mul_blade(b, 1.0);
    }
    out
}

/// `∇ψ_M` at grid point `point`, with `∂_t ψ_M` supplied by the caller.
pub fn dirac_derivative(
    state: &FieldState,
    point: usize,
    time_derivative: &ComplexMultivector,
) -> Result<ComplexMultivector> {
    if point >= state.len() {
        return Err(Error::domain(format!(
            "grid point {point} out of range 0..{}",
            state.len()
        )));
    }
    let psi: Vec<ComplexMultivector> = state.values().iter().map(|v| v.psi_m()).collect();
    let dz = first_derivative(&psi, point, state.dx);
    Ok(nabla(&[*time_derivative, ComplexMultivector::ZERO, ComplexMultivector::ZERO, dz]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DiracFieldValue;
    use crate::dynamics::Potential;
    use crate::multivector::Multivector;

    fn scalar_state(n: usize, f: impl Fn(f64) -> f64) -> FieldState {
        let dx = 2.0 * std::f64::consts::PI / n as f64;
        FieldState::from_fn(n, dx, 0.0, 0.0, 0.0, Potential::Zero, |z| {
            DiracFieldValue::uncharged(Multivector::scalar(f(z)), Multivector::zero()).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn uniform_field_has_no_spatial_derivative() {
        let s = scalar_state(16, |_| 3.0);
        let d = dirac_derivative(&s, 5, &ComplexMultivector::ZERO).unwrap();
        assert_eq!(d.max_abs(), 0.0);
    }

    #[test]
    fn sine_derivative_is_fourth_order() {
        let k = 2.0;
        let err = |n: usize| {
            let s = scalar_state(n, |z| (k * z).sin());
            (0..n)
                .map(|p| {
                    let d = dirac_derivative(&s, p, &ComplexMultivector::ZERO).unwrap();
                    (d.re.get(BladeIndex::vector(3)) - k * (k * s.z(p)).cos()).abs()
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(32) / err(64);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn second_derivative_of_cosine() {
        let n = 128;
        let dx = 2.0 * std::f64::consts::PI / n as f64;
        let v: Vec<f64> = (0..n).map(|k| (k as f64 * dx).cos()).collect();
        let max_err = (0..n)
            .map(|k| (second_derivative(&v, k, dx) + (k as f64 * dx).cos()).abs())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-6);
    }

    #[test]
    fn time_derivative_stencils() {
        let dt = 0.1;
        let samples: Vec<f64> = (-2..=2).map(|i| (i as f64 * dt).powi(3)).collect();
        assert!(time_derivative(&samples, dt).unwrap().abs() < 1e-15);
        let three: Vec<f64> = (-1..=1).map(|i| 2.0 * i as f64 * dt).collect();
        assert!((time_derivative(&three, dt).unwrap() - 2.0).abs() < 1e-14);
        assert!(time_derivative(&[1.0, 2.0], dt).is_err());
    }

    #[test]
    fn out_of_range_point() {
        let s = scalar_state(8, |_| 1.0);
        assert!(dirac_derivative(&s, 8, &ComplexMultivector::ZERO).is_err());
    }
}
