use std::collections::VecDeque;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

use dirac_sta::bilinears::{current, current_conservation_residual, spin_geometric, spin_nongeometric};
use dirac_sta::dynamics::{
    check_time_step, residual_window, zero_crossing_frequency, Evolver, Execution, System,
};
use dirac_sta::rep::{rep_table, Bispinor16, Bispinor4, CMatrix4, RMatrix16};
use dirac_sta::snapshot::{save_snapshot, BodyEncoding};
use dirac_sta::verify::{inject_sign_fault, verify, verify_with_table};
use dirac_sta::{BladeIndex, Error, FieldState, Result};

use crate::args::{BilinearArgs, Construction, DumpRepArgs, EvolveArgs, FieldArgs, SnapshotFormat, VerifyArgs};
use crate::presets::{prepare, validate};
use crate::Failure;

const SCHEMA: u32 = 1;

fn execution(field: &FieldArgs) -> Execution {
    if field.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, json: bool) -> std::result::Result<(), Failure> {
    let report = if args.inject_fault {
        verify_with_table(&inject_sign_fault(args.seed), args.seed)
    } else {
        verify(args.seed)
    };
    if let Some(path) = &args.out {
        write_json(path, &report)?;
    }
    if json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            println!("{tag} {:<30} error {:.3e}  tolerance {:.0e}", c.name, c.error, c.tolerance);
        }
    }
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::checks(failed))
    }
}

#[derive(Serialize)]
struct BladeImages {
    index: usize,
    name: String,
    dirac4: Vec<Vec<[f64; 2]>>,
    real16: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct RepDump {
    schema: u32,
    blade_count: usize,
    blades: Vec<BladeImages>,
    w: Vec<[f64; 2]>,
    w16: Vec<f64>,
    j_generator: Vec<Vec<f64>>,
}

fn complex_rows(m: &CMatrix4) -> Vec<Vec<[f64; 2]>> {
    m.row_iter().map(|r| r.iter().map(|z: &Complex64| [z.re, z.im]).collect()).collect()
}

fn real_rows(m: &RMatrix16) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn cmd_dump_rep(args: &DumpRepArgs) -> std::result::Result<(), Failure> {
    let t = rep_table();
    let dump = RepDump {
        schema: SCHEMA,
        blade_count: BladeIndex::all().count(),
        blades: BladeIndex::all()
            .map(|b| BladeImages {
                index: b.index(),
                name: b.name(),
                dirac4: complex_rows(t.dirac4(b)),
                real16: real_rows(t.real16(b)),
            })
            .collect(),
        w: Bispinor4::reference().components().iter().map(|z| [z.re, z.im]).collect(),
        w16: Bispinor16::reference().0.iter().copied().collect(),
        j_generator: real_rows(t.j_generator()),
    };
    match &args.out {
        Some(path) => write_json(path, &dump)?,
        None => print_json(&dump)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct BilinearPoint {
    t: f64,
    z: f64,
    current: [f64; 4],
    spin: [f64; 3],
}

#[derive(Serialize)]
struct BilinearDump {
    schema: u32,
    construction: &'static str,
    points: Vec<BilinearPoint>,
}

fn advance(state: &FieldState, dt: f64, steps: usize, exec: Execution) -> Result<FieldState> {
    let mut ev = Evolver::new(state, dt, exec)?;
    for _ in 0..steps {
        ev.step()?;
    }
    Ok(ev.state())
}

pub fn cmd_bilinears(args: &BilinearArgs, json: bool) -> std::result::Result<(), Failure> {
    let (dx, _) = validate(&args.field)?;
    if args.steps > 0 {
        check_time_step(args.dt, dx)?;
    }
    let prepared = prepare(&args.field)?;
    let state = advance(&prepared.state, args.dt, args.steps, execution(&args.field))?;
    let spin = match args.construction {
        Construction::Geometric => spin_geometric,
        Construction::Nongeometric => spin_nongeometric,
    };
    let points: Vec<BilinearPoint> = state
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| BilinearPoint {
            t: state.t,
            z: state.z(k),
            current: current(v),
            spin: spin(v),
        })
        .collect();
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if json {
        let dump = BilinearDump {
            schema: SCHEMA,
            construction: match args.construction {
                Construction::Geometric => "geometric",
                Construction::Nongeometric => "nongeometric",
            },
            points,
        };
        serde_json::to_writer_pretty(&mut sink, &dump)?;
        sink.write_all(b"\n")?;
    } else {
        writeln!(sink, "t,z,j0,j1,j2,j3,s012,s023,s031")?;
        for p in &points {
            let j = p.current;
            let s = p.spin;
            writeln!(
                sink,
                "{},{},{},{},{},{},{},{},{}",
                p.t, p.z, j[0], j[1], j[2], j[3], s[0], s[1], s[2]
            )
            ?;
        }
    }
    sink.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct EvolveSummary {
    schema: u32,
    command: &'static str,
    init: String,
    system: &'static str,
    grid_n: usize,
    dx: f64,
    dt: f64,
    steps: usize,
    t_final: f64,
    final_max_residual: Option<f64>,
    max_residual: Option<f64>,
    max_conservation: Option<f64>,
    analytic_error: Option<f64>,
    /// Flat index (constituent × 16 + blade) of the coefficient at grid point 0
    /// whose zero crossings give `fitted_frequency`.
    probe_coefficient: usize,
    fitted_frequency: Option<f64>,
    observables: PathBuf,
    snapshots: Vec<PathBuf>,
}

const OBSERVABLE_HEADER: &str = "step,t,residual_max,residual_l2,conservation,probe,\
j0,j1,j2,j3,spin_geo_012,spin_geo_023,spin_geo_031,spin_ng_012,spin_ng_023,spin_ng_031";

/// Residuals use a centered window of this many time slices.
const WINDOW: usize = 5;

/// Grid integrals (sum times dx) of the current and both spin densities.
fn integrated_bilinears(state: &FieldState) -> [f64; 10] {
    let mut acc = [0.0; 10];
    for v in state.values() {
        let (j, sg, sn) = (current(v), spin_geometric(v), spin_nongeometric(v));
        for (slot, x) in acc.iter_mut().zip(j.iter().chain(&sg).chain(&sn)) {
            *slot += x * state.dx;
        }
    }
    acc
}

/// The stored coefficient at grid point 0 with the largest initial magnitude.
fn probe_index(state: &FieldState) -> usize {
    let flat = state.values()[0].to_flat();
    (0..flat.len()).fold(0, |best, k| if flat[k].abs() > flat[best].abs() { k } else { best })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

struct Row {
    t: f64,
    probe: f64,
    bilinears: [f64; 10],
    residual: Option<(f64, f64)>,
    conservation: Option<f64>,
}

impl Row {
    fn new(state: &FieldState, probe: usize) -> Self {
        Row {
            t: state.t,
            probe: state.values()[0].to_flat()[probe],
            bilinears: integrated_bilinears(state),
            residual: None,
            conservation: None,
        }
    }

    fn write(&self, step: usize, out: &mut impl Write) -> io::Result<()> {
        write!(
            out,
            "{step},{},{},{},{},{}",
            self.t,
            fmt_opt(self.residual.map(|r| r.0)),
            fmt_opt(self.residual.map(|r| r.1)),
            fmt_opt(self.conservation),
            self.probe
        )?;
        for x in self.bilinears {
            write!(out, ",{x}")?;
        }
        writeln!(out)
    }
}

fn snapshot_path(dir: &Path, step: usize, format: SnapshotFormat) -> PathBuf {
    let ext = match format {
        SnapshotFormat::Binary => "bin",
        SnapshotFormat::Csv => "csv",
    };
    dir.join(format!("snapshot_{step:06}.{ext}"))
}

pub fn cmd_evolve(args: &EvolveArgs, json: bool) -> std::result::Result<(), Failure> {
    let (dx, _) = validate(&args.field)?;
    check_time_step(args.dt, dx)?;
    if args.steps == 0 {
        return Err(Error::Domain("steps must be at least 1".into()).into());
    }
    let exec = execution(&args.field);
    let prepared = prepare(&args.field)?;
    let s0 = prepared.state;
    let system = System::natural(s0.omega0, s0.charge);
    let body = match args.format {
        SnapshotFormat::Binary => BodyEncoding::BinaryLeF64,
        SnapshotFormat::Csv => BodyEncoding::Csv,
    };
    fs::create_dir_all(&args.out)?;

    let mut snapshots = Vec::new();
    let mut snapshot = |step: usize, state: &FieldState| -> Result<()> {
        let path = snapshot_path(&args.out, step, args.format);
        save_snapshot(&path, state, args.dt, body)?;
        snapshots.push(path);
        Ok(())
    };
    if args.snapshot_every > 0 {
        snapshot(0, &s0)?;
    }

    let probe = probe_index(&s0);
    let mut rows = vec![Row::new(&s0, probe)];
    let mut ev = Evolver::new(&s0, args.dt, exec)?;
    let mut window: VecDeque<FieldState> = VecDeque::from([s0]);
    for step in 1..=args.steps {
        ev.step()?;
        let state = ev.state();
        if args.snapshot_every > 0 && (step % args.snapshot_every == 0 || step == args.steps) {
            snapshot(step, &state)?;
        }
        rows.push(Row::new(&state, probe));
        window.push_back(state);
        if window.len() == WINDOW {
            let w: Vec<FieldState> = window.iter().cloned().collect();
            let r = residual_window(system, &w, exec)?;
            let row = &mut rows[step - WINDOW / 2];
            row.residual = Some((r.max_abs, r.l2));
            row.conservation = Some(current_conservation_residual(&w)?);
            window.pop_front();
        }
    }

    let observables = args.out.join("observables.csv");
    let mut out = BufWriter::new(File::create(&observables)?);
    writeln!(out, "{OBSERVABLE_HEADER}")?;
    for (step, row) in rows.iter().enumerate() {
        row.write(step, &mut out)?;
    }
    out.flush()?;

    let fold_max = |f: &dyn Fn(&Row) -> Option<f64>| rows.iter().filter_map(f).reduce(f64::max);
    let last = ev.state();
    let analytic_error = match &prepared.exact {
        Some(sol) => Some(last.max_abs_diff(&sol.sample(last.t, last.len(), last.dx)?)),
        None => None,
    };
    let times: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let probes: Vec<f64> = rows.iter().map(|r| r.probe).collect();
    let summary = EvolveSummary {
        schema: SCHEMA,
        command: "evolve",
        init: args.field.init.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        system: system.name(),
        grid_n: last.len(),
        dx: last.dx,
        dt: args.dt,
        steps: args.steps,
        t_final: last.t,
        final_max_residual: rows.iter().rev().find_map(|r| r.residual.map(|x| x.0)),
        max_residual: fold_max(&|r| r.residual.map(|x| x.0)),
        max_conservation: fold_max(&|r| r.conservation),
        analytic_error,
        probe_coefficient: probe,
        fitted_frequency: zero_crossing_frequency(&times, &probes).ok(),
        observables,
        snapshots,
    };
    write_json(&args.out.join("summary.json"), &summary)?;
    if json {
        print_json(&summary)?;
    } else {
        let show = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.6e}"));
        println!("final max residual: {}", show(summary.final_max_residual));
        println!("max conservation residual: {}", show(summary.max_conservation));
        println!("analytic error: {}", show(summary.analytic_error));
        println!(
            "fitted frequency: {}",
            summary.fitted_frequency.map_or("n/a".to_string(), |v| format!("{v:.8}"))
        );
    }
    Ok(())
}
