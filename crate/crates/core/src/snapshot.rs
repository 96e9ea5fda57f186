//! Field snapshot files.
//!
//! A snapshot is one line of JSON (the header) followed by the body. The body
//! holds 64 real coefficients per grid point: the constituents `ψ_e`, `ψ_o`,
//! `ψ'_e`, `ψ'_o` in that order, each as 16 blade coefficients indexed by the
//! blade bitmask. Points are stored in grid order.
//!
//! * `binary-le-f64`: `64 · grid_n` little-endian doubles, nothing else.
//! * `csv`: one line per point, `k,z,c0,…,c63`, no header row. Values use
//!   Rust's shortest round-trip formatting, so they read back exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::DiracFieldValue;
use crate::dynamics::{FieldState, Potential};
use crate::error::{Error, Result};

pub const SNAPSHOT_FORMAT: &str = "dirac-sta-snapshot";
pub const SNAPSHOT_VERSION: u32 = 1;
pub const SNAPSHOT_LAYOUT: &str = "point-major; constituents psi_e, psi_o, psi_e_prime, psi_o_prime; 16 blade coefficients each, by bitmask";
const COEFFS_PER_POINT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BodyEncoding {
    #[serde(rename = "binary-le-f64")]
    BinaryLeF64,
    #[serde(rename = "csv")]
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme {
    pub space: String,
    pub time: String,
}

impl Default for Scheme {
    fn default() -> Self {
        Scheme {
            space: "central-4".into(),
            time: "rk4".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotHeader {
    pub format: String,
    pub version: u32,
    pub grid_n: usize,
    pub dx: f64,
    /// Step size of the run that produced the snapshot; 0 for a bare state.
    pub dt: f64,
    pub t: f64,
    pub omega0: f64,
    pub charge: f64,
    pub potential: Potential,
    pub scheme: Scheme,
    pub body: BodyEncoding,
    pub layout: String,
}

impl SnapshotHeader {
    pub fn for_state(state: &FieldState, dt: f64, body: BodyEncoding) -> Self {
        SnapshotHeader {
            format: SNAPSHOT_FORMAT.into(),
            version: SNAPSHOT_VERSION,
            grid_n: state.len(),
            dx: state.dx,
            dt,
            t: state.t,
            omega0: state.omega0,
            charge: state.charge,
            potential: state.potential.clone(),
            scheme: Scheme::default(),
            body,
            layout: SNAPSHOT_LAYOUT.into(),
        }
    }
}

pub fn write_snapshot<W: Write>(mut w: W, state: &FieldState, dt: f64, body: BodyEncoding) -> Result<()> {
    let header = SnapshotHeader::for_state(state, dt, body);
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n")?;
    match body {
        BodyEncoding::BinaryLeF64 => {
            for v in state.values() {
                for x in v.to_flat() {
                    w.write_all(&x.to_le_bytes())?;
                }
            }
        }
        BodyEncoding::Csv => {
            for (k, v) in state.values().iter().enumerate() {
                write!(w, "{k},{}", state.z(k))?;
                for x in v.to_flat() {
                    write!(w, ",{x}")?;
                }
                w.write_all(b"\n")?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_snapshot<R: BufRead>(mut r: R) -> Result<(SnapshotHeader, FieldState)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: SnapshotHeader = serde_json::from_str(line.trim_end())?;
    if header.format != SNAPSHOT_FORMAT {
        return Err(Error::Format(format!("not a snapshot file (format {:?})", header.format)));
    }
    if header.version != SNAPSHOT_VERSION {
        return Err(Error::Format(format!("unsupported snapshot version {}", header.version)));
    }
    let n = header.grid_n;
    let flat = match header.body {
        BodyEncoding::BinaryLeF64 => read_binary(r, n)?,
        BodyEncoding::Csv => read_csv(r, n)?,
    };
    let values = flat
        .chunks(COEFFS_PER_POINT)
        .enumerate()
        .map(|(k, c)| DiracFieldValue::from_flat(c).map_err(|e| Error::Format(format!("point {k}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let state = FieldState::new(
        values,
        header.dx,
        header.t,
        header.omega0,
        header.charge,
        header.potential.clone(),
    )?;
    Ok((header, state))
}

fn read_binary<R: Read>(mut r: R, n: usize) -> Result<Vec<f64>> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let expected = n * COEFFS_PER_POINT * 8;
    if bytes.len() != expected {
        return Err(Error::Format(format!("binary body has {} bytes, expected {expected}", bytes.len())));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
        .collect())
}

fn read_csv<R: BufRead>(r: R, n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n * COEFFS_PER_POINT);
    let mut rows = 0;
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != COEFFS_PER_POINT + 2 {
            return Err(Error::Format(format!(
                "csv row {rows} has {} fields, expected {}",
                fields.len(),
                COEFFS_PER_POINT + 2
            )));
        }
        for f in &fields[2..] {
            out.push(
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Format(format!("csv row {rows}: bad number {f:?}")))?,
            );
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Format(format!("csv body has {rows} rows, expected {n}")));
    }
    Ok(out)
}

pub fn save_snapshot(path: &Path, state: &FieldState, dt: f64, body: BodyEncoding) -> Result<()> {
    write_snapshot(BufWriter::new(File::create(path)?), state, dt, body)
}

pub fn load_snapshot(path: &Path) -> Result<(SnapshotHeader, FieldState)> {
    read_snapshot(BufReader::new(File::open(path)?))
}
