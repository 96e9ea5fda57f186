//! Initial conditions and run configuration checks.

use std::f64::consts::PI;

use dirac_sta::dynamics::{check_grid, ChargedRest, EmPlaneWave, RestOscillator, Solution};
use dirac_sta::random::{random_field_value, seeded_rng};
use dirac_sta::{DiracFieldValue, Error, FieldState, Potential, Result};

use crate::args::{FieldArgs, InitPreset};

/// Grids above this size are refused before anything is allocated.
pub const MAX_GRID: usize = 1 << 20;

const RANDOM_MODES: usize = 3;

pub struct Prepared {
    pub state: FieldState,
    /// Exact solution for this configuration, when one is known.
    pub exact: Option<Box<dyn Solution>>,
}

pub fn parse_potential(text: &str) -> Result<Potential> {
    match text.strip_prefix("table:") {
        Some(path) => Potential::parse_table(&std::fs::read_to_string(path)?),
        None => text.parse(),
    }
}

pub fn grid_spacing(args: &FieldArgs) -> f64 {
    args.dx.unwrap_or(2.0 * PI / args.grid_n as f64)
}

/// Checks everything that does not need the field itself.
pub fn validate(args: &FieldArgs) -> Result<(f64, Potential)> {
    if args.grid_n > MAX_GRID {
        return Err(Error::Domain(format!("grid-n {} exceeds the limit {MAX_GRID}", args.grid_n)));
    }
    let dx = grid_spacing(args);
    check_grid(args.grid_n, dx)?;
    if !(args.omega0.is_finite() && args.charge.is_finite()) {
        return Err(Error::Domain("omega0 and charge must be finite".into()));
    }
    let potential = parse_potential(&args.potential)?;
    potential.validate(args.grid_n)?;
    Ok((dx, potential))
}

fn potential_is_zero(p: &Potential) -> bool {
    p.constant_value() == Some([0.0; 4])
}

pub fn prepare(args: &FieldArgs) -> Result<Prepared> {
    let (dx, potential) = validate(args)?;
    let n = args.grid_n;
    let length = n as f64 * dx;
    let uncoupled = args.charge == 0.0 || potential_is_zero(&potential);
    let (exact, sampler): (Option<Box<dyn Solution>>, Box<dyn Fn(f64) -> DiracFieldValue>) = match args.init {
        InitPreset::RestOscillator => {
            let sol = RestOscillator { omega0: args.omega0 };
            let exact: Option<Box<dyn Solution>> = uncoupled.then(|| Box::new(sol) as Box<dyn Solution>);
            (exact, Box::new(move |z| sol.value(0.0, z)))
        }
        InitPreset::EmPlaneWave => {
            let sol = EmPlaneWave {
                amplitude: 1.0,
                k: 2.0 * PI / length,
            };
            let exact: Option<Box<dyn Solution>> =
                (uncoupled && args.omega0 == 0.0).then(|| Box::new(sol) as Box<dyn Solution>);
            (exact, Box::new(move |z| sol.value(0.0, z)))
        }
        InitPreset::ChargedRest => {
            let a0 = match potential {
                Potential::Zero => 0.0,
                Potential::ConstA0 { a0 } => a0,
                _ => {
                    return Err(Error::Domain(
                        "charged-rest needs --potential zero or const-a0:V".into(),
                    ))
                }
            };
            let sol = ChargedRest {
                omega0: args.omega0,
                charge: args.charge,
                a0,
            };
            (Some(Box::new(sol)), Box::new(move |z| sol.value(0.0, z)))
        }
        InitPreset::RandomSeeded => {
            let mut rng = seeded_rng(args.seed);
            let modes: Vec<[DiracFieldValue; 2]> = (0..RANDOM_MODES)
                .map(|_| [random_field_value(&mut rng), random_field_value(&mut rng)])
                .collect();
            let kappa = 2.0 * PI / length;
            let f = move |z: f64| {
                modes.iter().enumerate().fold(DiracFieldValue::ZERO, |acc, (m, [a, b])| {
                    let phase = m as f64 * kappa * z;
                    acc + *a * phase.cos() + *b * phase.sin()
                })
            };
            (None, Box::new(f))
        }
    };
    let state = FieldState::from_fn(n, dx, 0.0, args.omega0, args.charge, potential, sampler)?;
    Ok(Prepared { state, exact })
}
