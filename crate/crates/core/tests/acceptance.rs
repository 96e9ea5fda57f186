//! Acceptance criteria, one PASS/FAIL line each. Runs serially so the output
//! is reproducible.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use dirac_sta::bilinears::current_conservation_residual;
use dirac_sta::dynamics::{
    kg_residual, residual_charged, residual_massless, zero_crossing_frequency, ChargedRest, EmPlaneWave,
    Evolver, Execution, RestOscillator, Solution,
};
use dirac_sta::verify::{verify, DEFAULT_SEED};
use dirac_sta::{BladeIndex, FieldState, Result, VerifyReport};

const EXEC: Execution = Execution::Serial;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(report: &VerifyReport, names: &[&str], budget: Option<Duration>, elapsed: Duration) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names {
        let c = report.check(name).unwrap_or_else(|| panic!("missing check {name}"));
        passed &= c.passed;
        parts.push(format!("{name} err={:.3e} tol={:.0e}", c.error, c.tolerance));
    }
    if let Some(b) = budget {
        passed &= elapsed < b;
    }
    Outcome {
        passed,
        detail: parts.join(", "),
    }
}

fn scalar_at_origin(state: &FieldState) -> f64 {
    state.values()[0].psi_e().get(BladeIndex::SCALAR)
}

fn odd_sector_max(state: &FieldState) -> f64 {
    state
        .values()
        .iter()
        .map(|v| v.psi_o().max_abs().max(v.psi_o_prime().max_abs()))
        .fold(0.0, f64::max)
}

/// Max over all steps of `|f(t) − cos t|` for the rest oscillator.
fn rest_oscillator_error(dt: f64, steps: usize) -> Result<f64> {
    let s0 = RestOscillator { omega0: 1.0 }.sample(0.0, 8, 0.5)?;
    let mut ev = Evolver::new(&s0, dt, EXEC)?;
    let mut worst = 0.0f64;
    for _ in 0..steps {
        ev.step()?;
        let s = ev.state();
        worst = worst.max((scalar_at_origin(&s) - s.t.cos()).abs());
    }
    Ok(worst)
}

fn criterion7() -> Result<Outcome> {
    let coarse = rest_oscillator_error(0.01, 1000)?;
    let fine = rest_oscillator_error(0.005, 2000)?;
    let ratio = coarse / fine;
    Ok(Outcome {
        passed: coarse < 1e-6 && (ratio - 16.0).abs() <= 3.0,
        detail: format!("max|f-cos t|={coarse:.3e} (dt=0.01), ratio on halving={ratio:.2}"),
    })
}

fn criterion8() -> Result<Outcome> {
    let n = 256;
    let dx = 2.0 * PI / n as f64;
    let dt = 0.4 * dx;
    let steps = 640;
    let wave = EmPlaneWave { amplitude: 1.0, k: 1.0 };
    let s0 = wave.sample(0.0, n, dx)?;
    let mut ev = Evolver::new(&s0, dt, EXEC)?;
    let mut window: VecDeque<FieldState> = VecDeque::from([s0]);
    let (mut residual, mut conservation, mut odd) = (0.0f64, 0.0f64, 0.0f64);
    for step in 1..=steps {
        ev.step()?;
        let s = ev.state();
        odd = odd.max(odd_sector_max(&s));
        window.push_back(s);
        if window.len() > 5 {
            window.pop_front();
        }
        if window.len() == 5 && (step % 32 == 0 || step == steps) {
            let w: Vec<FieldState> = window.iter().cloned().collect();
            residual = residual.max(residual_massless(&w, EXEC)?.max_abs);
            conservation = conservation.max(current_conservation_residual(&w)?);
        }
    }
    let last = ev.state();
    let exact = wave.sample(last.t, n, dx)?;
    let period_error = last.max_abs_diff(&exact);
    Ok(Outcome {
        passed: residual < 1e-6 && conservation < 1e-6 && odd <= 1e-12,
        detail: format!(
            "residual={residual:.3e}, conservation={conservation:.3e}, odd sector={odd:.1e}, error after one period={period_error:.3e}"
        ),
    })
}

fn criterion9() -> Result<Outcome> {
    let sol = ChargedRest {
        omega0: 1.0,
        charge: 1.0,
        a0: 0.25,
    };
    let dt = 0.01;
    let steps = 2000;
    let s0 = sol.sample(0.0, 8, 0.5)?;
    let mut ev = Evolver::new(&s0, dt, EXEC)?;
    let mut times = vec![0.0];
    let mut values = vec![scalar_at_origin(&s0)];
    let mut window: VecDeque<FieldState> = VecDeque::from([s0]);
    let (mut agreement, mut residual) = (0.0f64, 0.0f64);
    for _ in 0..steps {
        ev.step()?;
        let s = ev.state();
        times.push(s.t);
        values.push(scalar_at_origin(&s));
        window.push_back(s);
        if window.len() > 5 {
            window.pop_front();
        }
        if window.len() == 5 {
            let w: Vec<FieldState> = window.iter().cloned().collect();
            let r = residual_charged(&w, EXEC)?;
            agreement = agreement.max(r.path_agreement);
            residual = residual.max(r.max_abs);
        }
    }
    let omega = zero_crossing_frequency(&times, &values)?;
    Ok(Outcome {
        passed: (omega - 1.25).abs() <= 1e-4 && agreement <= 1e-12,
        detail: format!(
            "fitted frequency={omega:.7} (expected 1.25), path agreement={agreement:.1e}, residual={residual:.3e}"
        ),
    })
}

fn trajectory(s0: &FieldState, dt: f64, steps: usize) -> Result<Vec<FieldState>> {
    dirac_sta::dynamics::evolve(s0, dt, steps, 1, EXEC)
}

fn kg_ratio(s0: &FieldState, dt: f64, steps: usize) -> Result<(f64, f64)> {
    let coarse = kg_residual(&trajectory(s0, dt, steps)?)?;
    let fine = kg_residual(&trajectory(s0, dt / 2.0, 2 * steps)?)?;
    Ok((coarse, coarse / fine))
}

fn criterion10() -> Result<Outcome> {
    let rest = RestOscillator { omega0: 1.0 }.sample(0.0, 8, 0.5)?;
    let n = 256;
    let dx = 2.0 * PI / n as f64;
    let wave = EmPlaneWave { amplitude: 1.0, k: 1.0 }.sample(0.0, n, dx)?;
    let charged = ChargedRest {
        omega0: 1.0,
        charge: 1.0,
        a0: 0.25,
    }
    .sample(0.0, 8, 0.5)?;
    let runs = [
        ("rest", kg_ratio(&rest, 0.02, 100)?),
        ("plane-wave", kg_ratio(&wave, 0.4 * dx, 20)?),
        ("charged", kg_ratio(&charged, 0.02, 100)?),
    ];
    let passed = runs.iter().all(|(_, (_, r))| (r - 4.0).abs() <= 1.0);
    let detail = runs
        .iter()
        .map(|(name, (res, r))| format!("{name}: kg={res:.3e} ratio={r:.2}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome { passed, detail })
}

fn run(number: usize, title: &str, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| Outcome {
        passed: false,
        detail: format!("error: {e}"),
    });
    let tag = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "{tag} {number:>2} {title}: {} [{:.2}s]",
        outcome.detail,
        start.elapsed().as_secs_f64()
    );
    outcome.passed
}

fn main() {
    let start = Instant::now();
    let report = verify(DEFAULT_SEED);
    let verify_time = start.elapsed();
    let one_second = Some(Duration::from_secs(1));
    let mut ok = true;
    ok &= run(1, "algebra axioms", || {
        Ok(from_checks(&report, &["anticommutation", "blade-products-dirac4"], one_second, verify_time))
    });
    ok &= run(2, "representation faithfulness", || {
        Ok(from_checks(
            &report,
            &["real16-homomorphism", "real16-orthogonal", "projection-identity"],
            one_second,
            verify_time,
        ))
    });
    ok &= run(3, "spinor bridge", || {
        Ok(from_checks(&report, &["spinor-column", "spinor-round-trip"], None, verify_time))
    });
    ok &= run(4, "bilinear triple agreement", || {
        Ok(from_checks(
            &report,
            &["bilinear-triple-agreement", "bilinear-closed-forms"],
            None,
            verify_time,
        ))
    });
    ok &= run(5, "Lorentz covariance", || {
        Ok(from_checks(&report, &["lorentz-covariance", "boost-gamma0"], None, verify_time))
    });
    ok &= run(6, "discrete symmetries", || {
        Ok(from_checks(
            &report,
            &["complex-conjugation", "cpt-composition", "charge-conjugation-solution"],
            None,
            verify_time,
        ))
    });
    ok &= run(7, "rest-frame oscillator", criterion7);
    ok &= run(8, "massless sector", criterion8);
    ok &= run(9, "charged rest solution", criterion9);
    ok &= run(10, "Klein-Gordon consistency", criterion10);
    println!("total {:.2}s", start.elapsed().as_secs_f64());
    if !ok {
        std::process::exit(1);
    }
}
