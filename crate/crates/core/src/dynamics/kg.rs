//! Second-order Klein-Gordon check on stored trajectories.

use crate::blade::METRIC;
use crate::complex::ComplexMultivector;
use crate::error::{Error, Result};

use super::derivative::{first_derivative, second_derivative};
use super::{uniform_spacing, FieldState};

/// Max-abs of `□ψ + ω₀²ψ` over all components and interior times, with time
/// derivatives from centered second differences.
///
/// With charge, each component obeys
/// `□ψ + 2 j e A^μ ∂_μ ψ − e² A·A ψ + ω₀² ψ = 0`, which holds only when `A`
/// is constant; other potentials are rejected.
pub fn kg_residual(trajectory: &[FieldState]) -> Result<f64> {
    if trajectory.len() < 3 {
        return Err(Error::domain(format!(
            "Klein-Gordon residual needs at least 3 time slices, got {}",
            trajectory.len()
        )));
    }
    let dt = uniform_spacing(trajectory)?;
    let first = &trajectory[0];
    let (w, e) = (first.omega0, first.charge);
    let a = if e != 0.0 {
        first.potential.constant_value().ok_or_else(|| {
            Error::domain("Klein-Gordon check with charge needs a constant potential")
        })?
    } else {
        [0.0; 4]
    };
    let a_upper = [0, 1, 2, 3].map(|mu| METRIC[mu] * a[mu]);
    let a_sq: f64 = (0..4).map(|mu| a[mu] * a_upper[mu]).sum();

    let psi: Vec<Vec<ComplexMultivector>> = trajectory
        .iter()
        .map(|s| s.values().iter().map(|v| v.psi_m()).collect())
        .collect();
    let dx = first.dx;
    let mut worst = 0.0f64;
    for n in 1..psi.len() - 1 {
        for k in 0..first.len() {
            let tt = (psi[n + 1][k] - psi[n][k] * 2.0 + psi[n - 1][k]) * (1.0 / (dt * dt));
            let zz = second_derivative(&psi[n], k, dx);
            let mut r = tt - zz + psi[n][k] * (w * w);
            if e != 0.0 {
                let d_t = (psi[n + 1][k] - psi[n - 1][k]) * (0.5 / dt);
                let d_z = first_derivative(&psi[n], k, dx);
                let drift = d_t * a_upper[0] + d_z * a_upper[3];
                r = r + ComplexMultivector::new(-drift.im, drift.re) * (2.0 * e) - psi[n][k] * (e * e * a_sq);
            }
            worst = worst.max(r.max_abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ChargedRest, Potential, RestOscillator, Solution};

    fn sampled(sol: &dyn Solution, dt: f64, count: usize) -> Vec<FieldState> {
        (0..count).map(|i| sol.sample(i as f64 * dt, 8, 0.1).unwrap()).collect()
    }

    #[test]
    fn zero_field() {
        let z = FieldState::new(vec![Default::default(); 8], 0.1, 0.0, 1.0, 0.0, Potential::Zero).unwrap();
        let traj: Vec<_> = (0..3).map(|i| z.with_values(z.values().to_vec(), i as f64 * 0.01).unwrap()).collect();
        assert_eq!(kg_residual(&traj).unwrap(), 0.0);
    }

    #[test]
    fn second_order_on_exact_oscillator() {
        let sol = RestOscillator { omega0: 1.0 };
        let r1 = kg_residual(&sampled(&sol, 0.02, 20)).unwrap();
        let r2 = kg_residual(&sampled(&sol, 0.01, 40)).unwrap();
        assert!((r1 / r2 - 4.0).abs() < 0.2, "{}", r1 / r2);
    }

    #[test]
    fn charged_uses_covariant_form() {
        let sol = ChargedRest { omega0: 1.0, charge: 1.0, a0: 0.25 };
        let r = kg_residual(&sampled(&sol, 0.01, 10)).unwrap();
        assert!(r < 1e-4, "{r}");
    }

    #[test]
    fn validation() {
        let sol = RestOscillator { omega0: 1.0 };
        assert!(kg_residual(&sampled(&sol, 0.01, 2)).is_err());
        let mut traj = sampled(&sol, 0.01, 4);
        traj[3].t = 0.5;
        assert!(kg_residual(&traj).is_err());
    }
}
