//! Explicit RK4 time stepping of `j∇ψ_M − eAψ_M = ω₀ψ_M`.
//!
//! Multiplying on the left by `γ^0` gives
//! `∂_t ψ_M = −γ^0γ^3 ∂_z ψ_M − j ω₀ γ^0 ψ_M − j e γ^0 A ψ_M`.

use rayon::prelude::*;

use crate::blade::BladeIndex;
use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::error::{Error, Result};
use crate::multivector::Multivector;

use super::derivative::first_derivative;
use super::{FieldState, Potential};

/// Largest number of snapshots [`evolve`] keeps in memory.
pub const MAX_SLICES: usize = 10_000;

/// Largest accepted `dt/dx`.
pub const MAX_CFL: f64 = 0.5;

/// Rejects a step size that is not positive or breaks the CFL limit.
pub fn check_time_step(dt: f64, dx: f64) -> Result<()> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::domain(format!("dt must be positive and finite, got {dt}")));
    }
    let cfl = dt / dx;
    if cfl > MAX_CFL {
        return Err(Error::domain(format!(
            "CFL number {cfl:.4} exceeds {MAX_CFL} (dt = {dt}, dx = {dx})"
        )));
    }
    Ok(())
}

/// Serial evaluation is bitwise reproducible; parallel evaluation gives the
/// same bits because every grid point is computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// `j·x`.
fn times_j(x: ComplexMultivector) -> ComplexMultivector {
    ComplexMultivector::new(-x.im, x.re)
}

fn left_blade(x: &ComplexMultivector, b: BladeIndex, c: f64) -> ComplexMultivector {
    ComplexMultivector::new(x.re.left_mul_blade(b, c), x.im.left_mul_blade(b, c))
}

fn point_rhs(
    psi: &[ComplexMultivector],
    k: usize,
    dx: f64,
    omega0: f64,
    charge: f64,
    a: [f64; 4],
) -> ComplexMultivector {
    let g0 = BladeIndex::vector(0);
    let dz = first_derivative(psi, k, dx);
    let mut out = left_blade(&dz, BladeIndex::bivector(0, 3), -1.0);
    let mut source = psi[k] * omega0;
    if charge != 0.0 {
        for (mu, a_mu) in a.iter().enumerate() {
            if *a_mu != 0.0 {
                source += left_blade(&psi[k], BladeIndex::vector(mu), charge * a_mu);
            }
        }
    }
    out = out - times_j(left_blade(&source, g0, 1.0));
    out
}

/// `∂_t ψ_M` at every grid point.
pub fn rhs(
    psi: &[ComplexMultivector],
    t: f64,
    dx: f64,
    omega0: f64,
    charge: f64,
    potential: &Potential,
    exec: Execution,
) -> Vec<ComplexMultivector> {
    let f = |k: usize| {
        let a = potential.at(t, k as f64 * dx, k);
        point_rhs(psi, k, dx, omega0, charge, a)
    };
    match exec {
        Execution::Serial => (0..psi.len()).map(f).collect(),
        Execution::Parallel => (0..psi.len()).into_par_iter().map(f).collect(),
    }
}

fn axpy(base: &[ComplexMultivector], k: &[ComplexMultivector], h: f64) -> Vec<ComplexMultivector> {
    base.iter().zip(k).map(|(b, k)| *b + *k * h).collect()
}

/// Stepper that owns the field while it advances.
#[derive(Clone, Debug)]
pub struct Evolver {
    psi: Vec<ComplexMultivector>,
    template: FieldState,
    t: f64,
    dt: f64,
    step: usize,
    exec: Execution,
}

impl Evolver {
    pub fn new(state: &FieldState, dt: f64, exec: Execution) -> Result<Self> {
        check_time_step(dt, state.dx)?;
        Ok(Evolver {
            psi: state.values().iter().map(|v| v.psi_m()).collect(),
            template: state.clone(),
            t: state.t,
            dt,
            step: 0,
            exec,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// One classic fourth-order Runge-Kutta step.
    pub fn step(&mut self) -> Result<()> {
        let s = &self.template;
        let (dx, w, e, pot) = (s.dx, s.omega0, s.charge, &s.potential);
        let (t, h) = (self.t, self.dt);
        let f = |psi: &[ComplexMultivector], time: f64| rhs(psi, time, dx, w, e, pot, self.exec);
        let k1 = f(&self.psi, t);
        let k2 = f(&axpy(&self.psi, &k1, 0.5 * h), t + 0.5 * h);
        let k3 = f(&axpy(&self.psi, &k2, 0.5 * h), t + 0.5 * h);
        let k4 = f(&axpy(&self.psi, &k3, h), t + h);
        for (i, p) in self.psi.iter_mut().enumerate() {
            *p += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
        self.step += 1;
        // Accumulate time by multiplication to avoid drift over long runs.
        self.t = self.template.t + self.step as f64 * h;
        if let Some(k) = self.psi.iter().position(|p| !all_finite(p)) {
            return Err(Error::Numerical {
                step: self.step,
                reason: format!("non-finite field value at grid point {k}"),
            });
        }
        Ok(())
    }

    pub fn state(&self) -> FieldState {
        let values: Vec<DiracFieldValue> = self.psi.iter().map(DiracFieldValue::from_psi_m).collect();
        self.template
            .with_values(values, self.t)
            .expect("evolver preserves the grid")
    }

    /// Flattened `ψ_M` at each grid point.
    pub fn psi(&self) -> &[ComplexMultivector] {
        &self.psi
    }
}

fn all_finite(p: &ComplexMultivector) -> bool {
    let ok = |m: &Multivector| m.coeffs.iter().all(|c| c.is_finite());
    ok(&p.re) && ok(&p.im)
}

/// Advances `steps` steps and returns the initial state plus every
/// `snapshot_every`-th state (and the final one).
pub fn evolve(
    state: &FieldState,
    dt: f64,
    steps: usize,
    snapshot_every: usize,
    exec: Execution,
) -> Result<Vec<FieldState>> {
    if snapshot_every == 0 {
        return Err(Error::domain("snapshot cadence must be at least 1"));
    }
    let slices = steps / snapshot_every + 2;
    if slices > MAX_SLICES {
        return Err(Error::domain(format!(
            "{slices} snapshots requested; the in-memory limit is {MAX_SLICES}"
        )));
    }
    let mut ev = Evolver::new(state, dt, exec)?;
    let mut out = vec![state.clone()];
    for s in 1..=steps {
        ev.step()?;
        if s % snapshot_every == 0 || s == steps {
            out.push(ev.state());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{EmPlaneWave, RestOscillator, Solution};

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn cfl_and_dt_validation() {
        let s = RestOscillator { omega0: 1.0 }.sample(0.0, 16, 0.1).unwrap();
        assert!(matches!(Evolver::new(&s, 0.06, Execution::Serial), Err(Error::Domain(_))));
        assert!(Evolver::new(&s, 0.0, Execution::Serial).is_err());
        assert!(Evolver::new(&s, 0.05, Execution::Serial).is_ok());
        assert!(evolve(&s, 0.01, 10, 0, Execution::Serial).is_err());
        assert!(evolve(&s, 0.01, 2 * MAX_SLICES, 1, Execution::Serial).is_err());
    }

    #[test]
    fn nan_is_reported_with_step() {
        let mut s = RestOscillator { omega0: 1.0 }.sample(0.0, 16, 0.1).unwrap();
        let mut vals = s.values().to_vec();
        vals[3] = DiracFieldValue::uncharged(Multivector::scalar(f64::NAN), Multivector::zero()).unwrap();
        s = s.with_values(vals, 0.0).unwrap();
        let mut ev = Evolver::new(&s, 0.01, Execution::Serial).unwrap();
        match ev.step() {
            Err(Error::Numerical { step, .. }) => assert_eq!(step, 1),
            other => panic!("expected numerical error, got {other:?}"),
        }
    }

    #[test]
    fn rest_oscillator_tracks_cosine() {
        let sol = RestOscillator { omega0: 1.0 };
        let s = sol.sample(0.0, 8, 0.1).unwrap();
        let traj = evolve(&s, 0.01, 200, 1, Execution::Serial).unwrap();
        let err = traj
            .iter()
            .map(|st| (st.values()[0].psi_e().scalar_part() - st.t.cos()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn plane_wave_translates() {
        let n = 64;
        let dx = TWO_PI / n as f64;
        let wave = EmPlaneWave { amplitude: 1.0, k: 1.0 };
        let s = wave.sample(0.0, n, dx).unwrap();
        let dt = 0.4 * dx;
        let steps = 40;
        let traj = evolve(&s, dt, steps, steps, Execution::Serial).unwrap();
        let last = traj.last().unwrap();
        let exact = wave.sample(last.t, n, dx).unwrap();
        assert!(last.max_abs_diff(&exact) < 1e-4);
    }

    #[test]
    fn serial_and_parallel_agree_bitwise() {
        let n = 32;
        let dx = TWO_PI / n as f64;
        let wave = EmPlaneWave { amplitude: 1.0, k: 2.0 };
        let s = wave.sample(0.0, n, dx).unwrap();
        let a = evolve(&s, 0.4 * dx, 20, 20, Execution::Serial).unwrap();
        let b = evolve(&s, 0.4 * dx, 20, 20, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
