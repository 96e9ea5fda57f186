use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dirac-sta", version, about = "Spacetime-algebra Dirac field toolkit")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the self-check suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
    /// Evolve a field and write observables and snapshots.
    Evolve(EvolveArgs),
    /// Current and spin density at every grid point.
    Bilinears(BilinearArgs),
    /// Print every blade image in both matrix representations.
    DumpRep(DumpRepArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = dirac_sta::verify::DEFAULT_SEED)]
    pub seed: u64,

    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Corrupt one vector-product sign (chosen by the seed) before checking.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InitPreset {
    RestOscillator,
    EmPlaneWave,
    ChargedRest,
    RandomSeeded,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,

    /// Grid spacing; defaults to 2π / grid-n, one period across the grid.
    #[arg(long)]
    pub dx: Option<f64>,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega0: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub charge: f64,

    /// `zero`, `const-a0:V`, `plane-wave:AMP:K` or `table:PATH`.
    #[arg(long, default_value = "zero")]
    pub potential: String,

    #[arg(long, value_enum, default_value_t = InitPreset::RestOscillator)]
    pub init: InitPreset,

    /// Seed for `random-seeded`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Evaluate on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SnapshotFormat {
    Binary,
    Csv,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,

    #[arg(long, default_value_t = 1000)]
    pub steps: usize,

    /// Output directory.
    #[arg(long, default_value = "evolve-out")]
    pub out: PathBuf,

    /// Write a snapshot every N steps (plus the first and last); 0 disables.
    #[arg(long, default_value_t = 0)]
    pub snapshot_every: usize,

    #[arg(long, value_enum, default_value_t = SnapshotFormat::Binary)]
    pub format: SnapshotFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Geometric,
    Nongeometric,
}

#[derive(Args, Debug)]
pub struct BilinearArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,

    /// Evolve this many steps before evaluating.
    #[arg(long, default_value_t = 0)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = Construction::Geometric)]
    pub construction: Construction,

    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DumpRepArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
