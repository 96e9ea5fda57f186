//! Equations of motion on a one-dimensional periodic grid.
//!
//! Fields vary along `z` only; the full 4D algebra is retained at each point.
//! Grid point `k` sits at `z_k = k·dx`. Units are natural (`c = 1`).

mod derivative;
mod evolve;
mod fit;
mod kg;
mod residual;
mod solutions;

pub use derivative::{dirac_derivative, first_derivative, nabla, second_derivative, time_derivative};
pub use evolve::{check_time_step, evolve, rhs, Evolver, Execution, MAX_CFL, MAX_SLICES};
pub use fit::zero_crossing_frequency;
pub use kg::kg_residual;
pub use residual::{
    residual_analytic, residual_charged, residual_massive, residual_massless, residual_operator_form,
    residual_window, residual_with_time_derivative, FieldJet, ResidualEntry, ResidualReport, System, PATH_AGREEMENT_TOL,
};
pub use solutions::{ChargeConj, ChargedRest, Cpt, EmPlaneWave, Parity, RestOscillator, Solution, TimeReversal};

use serde::{Deserialize, Serialize};

use crate::complex::DiracFieldValue;
use crate::error::{Error, Result};

/// Smallest grid accepted by the stencils and the reflection maps.
pub const MIN_GRID: usize = 8;

/// Rejects grids the stencils and reflection maps cannot handle.
pub fn check_grid(n: usize, dx: f64) -> Result<()> {
    if n < MIN_GRID || n % 2 != 0 {
        return Err(Error::domain(format!(
            "grid must have an even number of points, at least {MIN_GRID}; got {n}"
        )));
    }
    if !(dx.is_finite() && dx > 0.0) {
        return Err(Error::domain(format!("dx must be positive and finite, got {dx}")));
    }
    Ok(())
}

/// Background potential `A = A_μ γ^μ`, lower-index components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    Zero,
    /// Uniform `A_0`.
    ConstA0 { a0: f64 },
    /// `A_1 = amplitude · cos(k (z − t))`.
    PlaneWave { amplitude: f64, k: f64 },
    /// Static per-point `[A_0, A_1, A_2, A_3]`.
    Table { values: Vec<[f64; 4]> },
}

impl Potential {
    /// Lower-index components at grid point `index` (position `z`) and time `t`.
    pub fn at(&self, t: f64, z: f64, index: usize) -> [f64; 4] {
        match self {
            Potential::Zero => [0.0; 4],
            Potential::ConstA0 { a0 } => [*a0, 0.0, 0.0, 0.0],
            Potential::PlaneWave { amplitude, k } => [0.0, amplitude * (k * (z - t)).cos(), 0.0, 0.0],
            Potential::Table { values } => values[index],
        }
    }

    /// Uniform in space and time, with its value.
    pub fn constant_value(&self) -> Option<[f64; 4]> {
        match self {
            Potential::Zero => Some([0.0; 4]),
            Potential::ConstA0 { a0 } => Some([*a0, 0.0, 0.0, 0.0]),
            Potential::PlaneWave { amplitude, .. } if *amplitude == 0.0 => Some([0.0; 4]),
            Potential::PlaneWave { .. } => None,
            Potential::Table { values } => {
                let first = *values.first()?;
                values.iter().all(|v| *v == first).then_some(first)
            }
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let finite = |x: &f64| x.is_finite();
        match self {
            Potential::Zero => Ok(()),
            Potential::ConstA0 { a0 } if finite(a0) => Ok(()),
            Potential::PlaneWave { amplitude, k } if finite(amplitude) && finite(k) => Ok(()),
            Potential::Table { values } => {
                if values.len() != n {
                    return Err(Error::domain(format!(
                        "potential table has {} rows but the grid has {n} points",
                        values.len()
                    )));
                }
                if !values.iter().flatten().all(finite) {
                    return Err(Error::domain("potential table contains non-finite values"));
                }
                Ok(())
            }
            _ => Err(Error::domain("potential parameters must be finite")),
        }
    }

    /// Short tag, e.g. `const-a0:0.25`.
    pub fn tag(&self) -> String {
        match self {
            Potential::Zero => "zero".into(),
            Potential::ConstA0 { a0 } => format!("const-a0:{a0}"),
            Potential::PlaneWave { amplitude, k } => format!("plane-wave:{amplitude}:{k}"),
            Potential::Table { values } => format!("table:{}", values.len()),
        }
    }

    /// Reads a table of `A_0, A_1, A_2, A_3` rows, comma or whitespace separated.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_table(text: &str) -> Result<Potential> {
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if fields.len() != 4 {
                return Err(Error::domain(format!(
                    "potential table line {}: expected 4 values, got {}",
                    line_no + 1,
                    fields.len()
                )));
            }
            let mut row = [0.0; 4];
            for (slot, f) in row.iter_mut().zip(fields) {
                *slot = f.parse().map_err(|_| {
                    Error::domain(format!("potential table line {}: bad number {f:?}", line_no + 1))
                })?;
            }
            values.push(row);
        }
        Ok(Potential::Table { values })
    }
}

impl std::str::FromStr for Potential {
    type Err = Error;

    /// Parses `zero`, `const-a0:V` and `plane-wave:AMP:K`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::domain(format!("bad number {x:?} in potential {s:?}")))
        };
        match parts.as_slice() {
            ["zero"] => Ok(Potential::Zero),
            ["const-a0", v] => Ok(Potential::ConstA0 { a0: num(v)? }),
            ["plane-wave", a, k] => Ok(Potential::PlaneWave {
                amplitude: num(a)?,
                k: num(k)?,
            }),
            _ => Err(Error::domain(format!("unknown potential preset {s:?}"))),
        }
    }
}

/// A snapshot of the field on the periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    values: Vec<DiracFieldValue>,
    pub dx: f64,
    pub t: f64,
    pub omega0: f64,
    pub charge: f64,
    pub potential: Potential,
}

impl FieldState {
    pub fn new(
        values: Vec<DiracFieldValue>,
        dx: f64,
        t: f64,
        omega0: f64,
        charge: f64,
        potential: Potential,
    ) -> Result<Self> {
        check_grid(values.len(), dx)?;
        if !(t.is_finite() && omega0.is_finite() && charge.is_finite()) {
            return Err(Error::domain("t, omega0 and charge must be finite"));
        }
        potential.validate(values.len())?;
        Ok(FieldState {
            values,
            dx,
            t,
            omega0,
            charge,
            potential,
        })
    }

    /// Samples `f(z)` at every grid point.
    pub fn from_fn(
        n: usize,
        dx: f64,
        t: f64,
        omega0: f64,
        charge: f64,
        potential: Potential,
        f: impl Fn(f64) -> DiracFieldValue,
    ) -> Result<Self> {
        let values = (0..n).map(|k| f(k as f64 * dx)).collect();
        Self::new(values, dx, t, omega0, charge, potential)
    }

    /// Same grid and physics with new values at time `t`.
    pub fn with_values(&self, values: Vec<DiracFieldValue>, t: f64) -> Result<Self> {
        Self::new(values, self.dx, t, self.omega0, self.charge, self.potential.clone())
    }

    pub fn values(&self) -> &[DiracFieldValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn z(&self, k: usize) -> f64 {
        k as f64 * self.dx
    }

    pub fn potential_at(&self, k: usize) -> [f64; 4] {
        self.potential.at(self.t, self.z(k), k)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &FieldState) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b)))
    }

    pub(crate) fn same_grid(&self, other: &FieldState) -> bool {
        self.len() == other.len() && self.dx == other.dx
    }
}

/// Checks that the slices share a grid and are equally spaced in time; returns the spacing.
pub(crate) fn uniform_spacing(slices: &[FieldState]) -> Result<f64> {
    if slices.len() < 2 {
        return Err(Error::domain("need at least two time slices"));
    }
    let dt = slices[1].t - slices[0].t;
    if dt <= 0.0 {
        return Err(Error::domain("time slices must be increasing"));
    }
    for w in slices.windows(2) {
        if !w[0].same_grid(&w[1]) {
            return Err(Error::domain("time slices are on different grids"));
        }
        let step = w[1].t - w[0].t;
        if (step - dt).abs() > 1e-9 * dt.abs().max(1.0) {
            return Err(Error::domain(format!(
                "non-uniform time spacing: {step} vs {dt}"
            )));
        }
    }
    Ok(dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::Multivector;

    fn uniform(n: usize) -> Result<FieldState> {
        FieldState::from_fn(n, 0.1, 0.0, 0.0, 0.0, Potential::Zero, |_| {
            DiracFieldValue::uncharged(Multivector::one(), Multivector::zero()).unwrap()
        })
    }

    #[test]
    fn grid_validation() {
        assert!(uniform(8).is_ok());
        assert!(matches!(uniform(6), Err(Error::Domain(_))));
        assert!(matches!(uniform(9), Err(Error::Domain(_))));
        let s = uniform(8).unwrap();
        assert!(FieldState::new(s.values().to_vec(), 0.0, 0.0, 0.0, 0.0, Potential::Zero).is_err());
        let bad_table = Potential::Table { values: vec![[0.0; 4]; 3] };
        assert!(FieldState::new(s.values().to_vec(), 0.1, 0.0, 0.0, 0.0, bad_table).is_err());
    }

    #[test]
    fn potential_parsing() {
        assert_eq!("zero".parse::<Potential>().unwrap(), Potential::Zero);
        assert_eq!(
            "const-a0:0.25".parse::<Potential>().unwrap(),
            Potential::ConstA0 { a0: 0.25 }
        );
        assert_eq!(
            "plane-wave:0.1:2".parse::<Potential>().unwrap(),
            Potential::PlaneWave { amplitude: 0.1, k: 2.0 }
        );
        assert!("const-a0:x".parse::<Potential>().is_err());
        assert!("nope".parse::<Potential>().is_err());
        let t = Potential::parse_table("# a\n1,0,0,0\n2 0 0 0\n").unwrap();
        assert_eq!(t, Potential::Table { values: vec![[1.0, 0.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0]] });
        assert!(Potential::parse_table("1,2,3\n").is_err());
    }

    #[test]
    fn constant_potentials() {
        assert_eq!(Potential::ConstA0 { a0: 0.5 }.constant_value(), Some([0.5, 0.0, 0.0, 0.0]));
        assert_eq!(Potential::PlaneWave { amplitude: 0.1, k: 1.0 }.constant_value(), None);
    }
}
