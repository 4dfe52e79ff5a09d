//! `isozero`: exact and numeric checks of Floquet isospectrality from the
//! command line.
//!
//! Exit status: 0 when every checked claim holds, 1 when one is falsified, 2 on
//! usage or domain errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "isozero",
    version,
    about = "Exact Floquet isospectrality checks for discrete periodic operators"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the exact k = 0 characteristic polynomial with the free one.
    Verify(Source),
    /// Print the characteristic polynomial det(D - l*I) of a potential.
    Charpoly(CharpolyArgs),
    /// List disjoint cycle covers.
    Covers(CoversArgs),
    /// Table of S(m, p), by enumeration and by the binomial formula.
    STable(STableArgs),
    /// Check the S-splitting identity.
    Identity(IdentityArgs),
    /// Compare closed forms of the F coefficients with the symbolic ones.
    FCheck(FCheckArgs),
    /// Write the isospectrality equations of a period as a Macaulay2 script.
    ExportM2(ExportArgs),
    /// Search a palette of Gaussian integers for exact solutions.
    Scan(ScanArgs),
    /// Compare two potentials' Floquet spectra at sampled quasimomenta.
    Isospectral(IsospectralArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["m", "potential"])))]
struct Source {
    /// Four-slot potential (1+i, 1-i) at slots 1, 2 and (-1+i, -1-i) at m+1, m+2.
    #[arg(long)]
    m: Option<usize>,
    /// One-axis potential file.
    #[arg(long)]
    potential: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CharpolyArgs {
    #[command(flatten)]
    source: Source,
    /// Quasimomentum, one component per axis; exact output needs k = 0.
    #[arg(long, value_delimiter = ',')]
    k: Vec<f64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("graph").required(true).args(["jacobi", "m", "potential"])))]
struct CoversArgs {
    /// Unit-weight Jacobi digraph on this many vertices.
    #[arg(long)]
    jacobi: Option<usize>,
    /// Digraph of D_v - l*I for the four-slot potential.
    #[arg(long)]
    m: Option<usize>,
    /// Digraph of D_v - l*I for a one-axis exact potential file.
    #[arg(long)]
    potential: Option<PathBuf>,
    /// Only covers with exactly this many 2-cycles.
    #[arg(long)]
    two_cycles: Option<usize>,
    /// Print at most this many covers; the count is always exact.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Args, Debug)]
struct STableArgs {
    #[arg(long, default_value_t = 12)]
    max_m: usize,
    /// Defaults to max_m / 2.
    #[arg(long)]
    max_p: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["ell", "all_ell"])))]
struct IdentityArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    ell: Option<usize>,
    /// Every ell in 1..m.
    #[arg(long)]
    all_ell: bool,
}

#[derive(Args, Debug)]
struct FCheckArgs {
    #[arg(long)]
    m: usize,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long)]
    period: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    period: usize,
    /// 1-based positions to vary, e.g. 1,2,5,6.
    #[arg(long, value_delimiter = ',', required = true)]
    slots: Vec<usize>,
    /// Gaussian integers, e.g. "0,1+i,1-i,-1+i,-1-i".
    #[arg(long)]
    palette: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("points").args(["k", "grid", "random"])))]
struct IsospectralArgs {
    #[arg(long)]
    potential: PathBuf,
    /// Reference potential; the zero potential on the same lattice when absent.
    #[arg(long)]
    against: Option<PathBuf>,
    /// A single quasimomentum.
    #[arg(long, value_delimiter = ',')]
    k: Vec<f64>,
    /// A uniform grid with this many points per axis (default 5).
    #[arg(long)]
    grid: Option<usize>,
    /// This many random points drawn with --seed.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("plain JSON values")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
