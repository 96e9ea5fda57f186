//! Residuals of the field equations.
//!
//! Every evaluation goes three ways and the results must agree:
//!
//! * the flattened equation `j∇ψ_M − eAψ_M − ω₀ψ_M`;
//! * the four real constituent equations
//!   `∇ψ_e − eAψ'_e − ω₀ψ_o`, `∇ψ'_e + eAψ_e − ω₀ψ'_o`,
//!   `∇ψ_o − eAψ'_o + ω₀ψ_e`, `∇ψ'_o + eAψ_o + ω₀ψ'_e`;
//! * the tensor-component rows (scalar, pseudoscalar, vector divergence,
//!   pseudovector divergence, bivector) for the unprimed and primed pairs.
//!
//! The reported magnitudes are those of the component rows.

use rayon::prelude::*;

use crate::blade::{BladeIndex, METRIC};
use crate::complex::{ComplexMultivector, DiracFieldValue};
use crate::components::{levi_civita, raise_vector, FieldComponents, Tensor2};
use crate::error::{Error, Result};
use crate::multivector::Multivector;

use super::derivative::{first_derivative, nabla, time_derivative};
use super::evolve::Execution;
use super::solutions::Solution;
use super::{uniform_spacing, FieldState};

/// Maximum disagreement allowed between the evaluation paths, relative to
/// `1 + ` the largest term entering the residual.
pub const PATH_AGREEMENT_TOL: f64 = 1e-12;

/// Field value and its four partial derivatives `∂_μ` at one spacetime point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldJet {
    pub value: DiracFieldValue,
    pub grad: [DiracFieldValue; 4],
}

/// Which equation set a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Massless,
    Massive,
    Charged,
    /// `∇ψ_e = ω₀ ψ_e γ^2γ^1γ^0`.
    OperatorForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualEntry {
    pub label: String,
    pub max_abs: f64,
    /// Root mean square over the evaluated points.
    pub l2: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub system: System,
    pub entries: Vec<ResidualEntry>,
    pub max_abs: f64,
    pub l2: f64,
    /// Largest disagreement seen between the evaluation paths.
    pub path_agreement: f64,
    pub points: usize,
}

impl System {
    /// The narrowest system whose preconditions `omega0` and `charge` meet.
    pub fn natural(omega0: f64, charge: f64) -> System {
        match (omega0 == 0.0, charge == 0.0) {
            (true, true) => System::Massless,
            (_, true) => System::Massive,
            _ => System::Charged,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            System::Massless => "massless",
            System::Massive => "massive",
            System::Charged => "charged",
            System::OperatorForm => "operator-form",
        }
    }
}

impl ResidualReport {
    pub fn entry(&self, label: &str) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

const ROW_LABELS: [&str; 5] = [
    "scalar",
    "pseudoscalar",
    "vector-divergence",
    "pseudovector-divergence",
    "bivector",
];

/// Component rows for one (even, odd) pair.
#[derive(Clone, Copy, Debug, Default)]
struct Rows {
    scalar: [f64; 4],
    pseudoscalar: [f64; 4],
    vdiv: f64,
    pvdiv: f64,
    bivector: Tensor2,
}

impl Rows {
    fn magnitudes(&self) -> [(f64, f64); 5] {
        let vec_mag = |v: &[f64; 4]| {
            (
                v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
                v.iter().map(|x| x * x).sum::<f64>(),
            )
        };
        let mut biv = (0.0f64, 0.0);
        for a in 0..4 {
            for b in (a + 1)..4 {
                let x = self.bivector[a][b];
                biv.0 = biv.0.max(x.abs());
                biv.1 += x * x;
            }
        }
        [
            vec_mag(&self.scalar),
            vec_mag(&self.pseudoscalar),
            (self.vdiv.abs(), self.vdiv * self.vdiv),
            (self.pvdiv.abs(), self.pvdiv * self.pvdiv),
            biv,
        ]
    }

    /// Odd multivector `r_s^α γ_α − r_p^α Iγ_α`.
    fn odd_multivector(&self) -> Multivector {
        // Lowering and raising coincide for a diagonal ±1 metric.
        let p = raise_vector(self.pseudoscalar).map(|x| -x);
        FieldComponents {
            v: raise_vector(self.scalar),
            p,
            ..Default::default()
        }
        .to_multivector()
    }

    /// Even multivector `r_v + ½ r_F^{αβ} γ_α∧γ_β − r_p I`.
    fn even_multivector(&self) -> Multivector {
        let mut big_f = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                big_f[a][b] = METRIC[a] * METRIC[b] * self.bivector[a][b];
            }
        }
        FieldComponents {
            f: self.vdiv,
            big_f,
            g: -self.pvdiv,
            ..Default::default()
        }
        .to_multivector()
    }
}

struct PairInput<'a> {
    even: &'a Multivector,
    odd: &'a Multivector,
    partner_even: &'a Multivector,
    partner_odd: &'a Multivector,
    grad_even: [Multivector; 4],
    grad_odd: [Multivector; 4],
    /// −1 for the unprimed pair, +1 for the primed pair.
    coupling_sign: f64,
}

fn component_rows(inp: &PairInput, a_lower: [f64; 4], charge: f64, omega0: f64) -> Rows {
    let c_e = FieldComponents::from_multivector(inp.even);
    let c_o = FieldComponents::from_multivector(inp.odd);
    let c_pe = FieldComponents::from_multivector(inp.partner_even);
    let c_po = FieldComponents::from_multivector(inp.partner_odd);
    let d_e = inp.grad_even.map(|m| FieldComponents::from_multivector(&m));
    let d_o = inp.grad_odd.map(|m| FieldComponents::from_multivector(&m));
    let a_upper = raise_vector(a_lower);
    let se = inp.coupling_sign * charge;

    let d_f_up: Vec<Tensor2> = d_e.iter().map(|d| d.f_upper()).collect();
    let d_dual_up: Vec<Tensor2> = d_e.iter().map(|d| d.dual_upper()).collect();
    let pe_f_up = c_pe.f_upper();
    let pe_dual_up = c_pe.dual_upper();
    let v_up = c_o.v_upper();
    let p_up = c_o.p_upper();
    let pv_up = c_po.v_upper();

    let mut rows = Rows::default();
    for alpha in 0..4 {
        let mut s = METRIC[alpha] * d_e[alpha].f;
        let mut ps = METRIC[alpha] * d_e[alpha].g;
        let mut cs = a_upper[alpha] * c_pe.f;
        let mut cps = a_upper[alpha] * c_pe.g;
        for beta in 0..4 {
            s += d_f_up[beta][beta][alpha];
            ps += d_dual_up[beta][beta][alpha];
            cs += a_lower[beta] * pe_f_up[beta][alpha];
            cps += a_lower[beta] * pe_dual_up[beta][alpha];
        }
        rows.scalar[alpha] = s + se * cs - omega0 * v_up[alpha];
        rows.pseudoscalar[alpha] = ps + se * cps + omega0 * p_up[alpha];
    }

    let mut div_v = 0.0;
    let mut div_p = 0.0;
    let mut av = 0.0;
    let mut ap = 0.0;
    for alpha in 0..4 {
        div_v += d_o[alpha].v_upper()[alpha];
        div_p += d_o[alpha].p_upper()[alpha];
        av += a_lower[alpha] * pv_up[alpha];
        ap += a_lower[alpha] * c_po.p_upper()[alpha];
    }
    rows.vdiv = div_v + se * av + omega0 * c_e.f;
    rows.pvdiv = div_p + se * ap - omega0 * c_e.g;

    let f_up = c_e.f_upper();
    for alpha in 0..4 {
        for beta in 0..4 {
            // F_v^{αβ} = ∂^α v^β − ∂^β v^α
            let fv = METRIC[alpha] * d_o[alpha].v_upper()[beta]
                - METRIC[beta] * d_o[beta].v_upper()[alpha];
            let fav = a_upper[alpha] * pv_up[beta] - a_upper[beta] * pv_up[alpha];
            let mut fp = 0.0;
            let mut fap = 0.0;
            for gamma in 0..4 {
                for delta in 0..4 {
                    let eps = levi_civita([alpha, beta, gamma, delta]);
                    if eps == 0.0 {
                        continue;
                    }
                    fp += 0.5 * eps * (d_o[gamma].p[delta] - d_o[delta].p[gamma]);
                    fap += 0.5 * eps * (a_lower[gamma] * c_po.p[delta] - a_lower[delta] * c_po.p[gamma]);
                }
            }
            rows.bivector[alpha][beta] = fv + fp + se * (fav + fap) + omega0 * f_up[alpha][beta];
        }
    }
    rows
}

fn vector_mul(a_lower: [f64; 4], m: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (mu, a) in a_lower.iter().enumerate() {
        if *a != 0.0 {
            out += m.left_mul_blade(BladeIndex::vector(mu), *a);
        }
    }
    out
}

fn real_nabla(grad: &[Multivector; 4]) -> Multivector {
    let mut out = Multivector::zero();
    for (mu, g) in grad.iter().enumerate() {
        out += g.left_mul_blade(BladeIndex::vector(mu), 1.0);
    }
    out
}

struct PointResidual {
    unprimed: Rows,
    primed: Rows,
    operator: Multivector,
    agreement: f64,
}

fn evaluate_point(jet: &FieldJet, a: [f64; 4], omega0: f64, charge: f64) -> PointResidual {
    let [pe, po, ppe, ppo] = jet.value.constituents();
    let grads = jet.grad.map(|g| g.constituents());
    let grad_of = |k: usize| [grads[0][k], grads[1][k], grads[2][k], grads[3][k]];
    let (ge, go, gpe, gpo) = (grad_of(0), grad_of(1), grad_of(2), grad_of(3));

    // Constituent equations.
    let ea = |m: &Multivector| vector_mul(a, m) * charge;
    let r1 = real_nabla(&ge) - ea(&ppe) - po * omega0;
    let r2 = real_nabla(&gpe) + ea(&pe) - ppo * omega0;
    let r3 = real_nabla(&go) - ea(&ppo) + pe * omega0;
    let r4 = real_nabla(&gpo) + ea(&po) + ppe * omega0;

    // Flattened equation.
    let psi = jet.value.psi_m();
    let dpsi = jet.grad.map(|g| g.psi_m());
    let n = nabla(&dpsi);
    let j_n = ComplexMultivector::new(-n.im, n.re);
    let a_psi = ComplexMultivector::new(vector_mul(a, &psi.re), vector_mul(a, &psi.im));
    let q = j_n - a_psi * charge - psi * omega0;
    let q_from_parts = ComplexMultivector::new(-(r3 + r2), r1 - r4);

    // Component rows.
    let unprimed = component_rows(
        &PairInput {
            even: &pe,
            odd: &po,
            partner_even: &ppe,
            partner_odd: &ppo,
            grad_even: ge,
            grad_odd: go,
            coupling_sign: -1.0,
        },
        a,
        charge,
        omega0,
    );
    let primed = component_rows(
        &PairInput {
            even: &ppe,
            odd: &ppo,
            partner_even: &pe,
            partner_odd: &po,
            grad_even: gpe,
            grad_odd: gpo,
            coupling_sign: 1.0,
        },
        a,
        charge,
        omega0,
    );

    let agreement = [
        q.max_abs_diff(&q_from_parts),
        r1.max_abs_diff(&unprimed.odd_multivector()),
        r3.max_abs_diff(&unprimed.even_multivector()),
        r2.max_abs_diff(&primed.odd_multivector()),
        r4.max_abs_diff(&primed.even_multivector()),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let g21g0 = Multivector::gammas(&[2, 1, 0]);
    let operator = real_nabla(&ge) - pe * g21g0 * omega0;

    PointResidual {
        unprimed,
        primed,
        operator,
        agreement,
    }
}

fn jet_scale(jet: &FieldJet, a: [f64; 4], omega0: f64, charge: f64) -> f64 {
    let a_mag = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let grad = jet.grad.iter().fold(0.0f64, |m, g| m.max(g.max_abs()));
    let coupling = (omega0.abs() + charge.abs() * a_mag) * jet.value.max_abs();
    1.0 + grad + coupling
}

struct Accumulator {
    max: Vec<f64>,
    sum_sq: Vec<f64>,
    agreement: f64,
    points: usize,
}

fn check_preconditions(system: System, omega0: f64, charge: f64) -> Result<()> {
    match system {
        System::Massless if omega0 != 0.0 => Err(Error::domain(format!(
            "massless residual requested with omega0 = {omega0}"
        ))),
        System::Massless | System::Massive if charge != 0.0 => Err(Error::domain(format!(
            "uncharged residual requested with charge = {charge}"
        ))),
        _ => Ok(()),
    }
}

fn labels(system: System) -> Vec<String> {
    match system {
        System::Massless | System::Massive => ROW_LABELS.iter().map(|s| s.to_string()).collect(),
        System::Charged => ROW_LABELS
            .iter()
            .map(|s| s.to_string())
            .chain(ROW_LABELS.iter().map(|s| format!("{s}'")))
            .collect(),
        System::OperatorForm => vec!["operator".to_string()],
    }
}

/// Evaluates residuals at a list of jets with their potentials.
fn report_from_points(
    system: System,
    points: &[(FieldJet, [f64; 4])],
    omega0: f64,
    charge: f64,
    exec: Execution,
) -> Result<ResidualReport> {
    check_preconditions(system, omega0, charge)?;
    let eval = |(jet, a): &(FieldJet, [f64; 4])| {
        let r = evaluate_point(jet, *a, omega0, charge);
        let scale = jet_scale(jet, *a, omega0, charge);
        (r, scale)
    };
    let results: Vec<(PointResidual, f64)> = match exec {
        Execution::Serial => points.iter().map(eval).collect(),
        Execution::Parallel => points.par_iter().map(eval).collect(),
    };

    let names = labels(system);
    let mut acc = Accumulator {
        max: vec![0.0; names.len()],
        sum_sq: vec![0.0; names.len()],
        agreement: 0.0,
        points: results.len(),
    };
    for (r, scale) in &results {
        let rel = r.agreement / scale;
        if rel > PATH_AGREEMENT_TOL {
            return Err(Error::consistency(format!(
                "component and multivector residuals disagree by {:e} (relative {rel:e})",
                r.agreement
            )));
        }
        acc.agreement = acc.agreement.max(r.agreement);
        let mut add = |slot: usize, (m, s): (f64, f64)| {
            acc.max[slot] = acc.max[slot].max(m);
            acc.sum_sq[slot] += s;
        };
        match system {
            System::Massless | System::Massive => {
                for (k, (u, p)) in r.unprimed.magnitudes().into_iter().zip(r.primed.magnitudes()).enumerate() {
                    add(k, (u.0.max(p.0), u.1 + p.1));
                }
            }
            System::Charged => {
                for (k, u) in r.unprimed.magnitudes().into_iter().enumerate() {
                    add(k, u);
                }
                for (k, p) in r.primed.magnitudes().into_iter().enumerate() {
                    add(k + 5, p);
                }
            }
            System::OperatorForm => add(0, (r.operator.max_abs(), r.operator.norm_sq())),
        }
    }

    let count = acc.points.max(1) as f64;
    let entries: Vec<ResidualEntry> = names
        .into_iter()
        .zip(acc.max.iter().zip(&acc.sum_sq))
        .map(|(label, (m, s))| ResidualEntry {
            label,
            max_abs: *m,
            l2: (s / count).sqrt(),
        })
        .collect();
    let max_abs = entries.iter().fold(0.0f64, |m, e| m.max(e.max_abs));
    let l2 = (acc.sum_sq.iter().sum::<f64>() / count).sqrt();
    Ok(ResidualReport {
        system,
        entries,
        max_abs,
        l2,
        path_agreement: acc.agreement,
        points: acc.points,
    })
}

/// Builds jets for the middle slice of a 3- or 5-slice window.
fn window_jets(window: &[FieldState]) -> Result<Vec<(FieldJet, [f64; 4])>> {
    if window.len() != 3 && window.len() != 5 {
        return Err(Error::domain(format!(
            "residual window needs 3 or 5 time slices, got {}",
            window.len()
        )));
    }
    let dt = uniform_spacing(window)?;
    let center = &window[window.len() / 2];
    let n = center.len();
    let mut samples = Vec::with_capacity(window.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        samples.clear();
        samples.extend(window.iter().map(|s| s.values()[k]));
        let dt_value = time_derivative(&samples, dt)?;
        out.push(dt_value);
    }
    jets_with_time_derivative(center, &out)
}

fn jets_with_time_derivative(
    state: &FieldState,
    dpsi_dt: &[DiracFieldValue],
) -> Result<Vec<(FieldJet, [f64; 4])>> {
    if dpsi_dt.len() != state.len() {
        return Err(Error::domain("time derivative length does not match the grid"));
    }
    let values = state.values();
    Ok((0..state.len())
        .map(|k| {
            let jet = FieldJet {
                value: values[k],
                grad: [
                    dpsi_dt[k],
                    DiracFieldValue::ZERO,
                    DiracFieldValue::ZERO,
                    first_derivative(values, k, state.dx),
                ],
            };
            (jet, state.potential_at(k))
        })
        .collect())
}

/// Component equations of `system` at the middle slice of a 3- or 5-slice window.
pub fn residual_window(system: System, window: &[FieldState], exec: Execution) -> Result<ResidualReport> {
    let jets = window_jets(window)?;
    let c = &window[window.len() / 2];
    report_from_points(system, &jets, c.omega0, c.charge, exec)
}

/// Massless component equations at the middle slice of a 3- or 5-slice window.
pub fn residual_massless(window: &[FieldState], exec: Execution) -> Result<ResidualReport> {
    residual_window(System::Massless, window, exec)
}

/// Massive (uncharged) component equations at the middle slice of the window.
pub fn residual_massive(window: &[FieldState], exec: Execution) -> Result<ResidualReport> {
    residual_window(System::Massive, window, exec)
}

/// All ten charged component equations at the middle slice of the window.
pub fn residual_charged(window: &[FieldState], exec: Execution) -> Result<ResidualReport> {
    residual_window(System::Charged, window, exec)
}

/// `∇ψ_e − ω₀ ψ_e γ^2γ^1γ^0` at the middle slice of the window.
pub fn residual_operator_form(window: &[FieldState], exec: Execution) -> Result<ResidualReport> {
    residual_window(System::OperatorForm, window, exec)
}

/// Residual of a single snapshot with an explicitly supplied `∂_t ψ`.
pub fn residual_with_time_derivative(
    system: System,
    state: &FieldState,
    dpsi_dt: &[DiracFieldValue],
    exec: Execution,
) -> Result<ResidualReport> {
    let jets = jets_with_time_derivative(state, dpsi_dt)?;
    report_from_points(system, &jets, state.omega0, state.charge, exec)
}

/// Residual of an analytic solution at the given `(t, z)` samples, using its
/// exact derivatives.
pub fn residual_analytic(
    system: System,
    solution: &dyn Solution,
    samples: &[(f64, f64)],
) -> Result<ResidualReport> {
    let points: Vec<(FieldJet, [f64; 4])> = samples
        .iter()
        .map(|&(t, z)| (solution.jet(t, z), solution.potential_at(t, z)))
        .collect();
    report_from_points(
        system,
        &points,
        solution.omega0(),
        solution.charge(),
        Execution::Serial,
    )
}
