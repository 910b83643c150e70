mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use k3lattice::io::to_pretty_string;
use k3lattice::Error;
use report::{InputDigest, RunReport};

/// Exact lattice computations for Kulikov degenerations of K3 surfaces.
///
/// Exit status is 0 when every check passes, 1 when a check fails and 2 on
/// malformed input. K3LAT_THREADS sets the worker thread count.
#[derive(Parser, Debug)]
#[command(name = "k3lat", version, about)]
struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check Kulikov configurations (charges, gluing, triangulation).
    Validate {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
    },
    /// Numerically Cartier classes modulo the ξ_i.
    Lambda { config: PathBuf },
    /// Compare the gluing and period complexes of a configuration with toric models.
    QuasiIso { config: PathBuf },
    /// Resolve the order-k base change.
    Basechange {
        config: PathBuf,
        k: usize,
        /// Write the resolved configuration here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Zero-dimensional cusps for degree 2d.
    Cusps { d: u64 },
    /// Yau-Zaslow counts n_0 ... n_dmax.
    Yz {
        dmax: usize,
        /// Also compare against coloured partition counts.
        #[arg(long)]
        oracle: bool,
    },
    /// Small-cone walls of H(n) or of a rank-2 lattice given as a JSON Gram file.
    Walls {
        lattice: String,
        /// Height bound for the dual-vector enumeration.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Logarithm of monodromy for (δ, λ) in a lattice (JSON file or name such as "H^3+E8^2").
    Monodromy { lattice: String, delta: String, lambda: String },
    /// Print a bundled configuration (cube, typeII_2re, cube_toric).
    Fixture { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Lambda { .. } => "lambda",
            Command::QuasiIso { .. } => "quasi-iso",
            Command::Basechange { .. } => "basechange",
            Command::Cusps { .. } => "cusps",
            Command::Yz { .. } => "yz",
            Command::Walls { .. } => "walls",
            Command::Monodromy { .. } => "monodromy",
            Command::Fixture { .. } => "fixture",
        }
    }

    fn run(&self, digest: &mut InputDigest) -> k3lattice::Result<report::Outcome> {
        match self {
            Command::Validate { configs } => commands::validate_configs(configs, digest),
            Command::Lambda { config } => commands::lambda(config, digest),
            Command::QuasiIso { config } => commands::quasi_iso(config, digest),
            Command::Basechange { config, k, output } => commands::base_change(config, *k, output.as_deref(), digest),
            Command::Cusps { d } => commands::cusps(*d),
            Command::Yz { dmax, oracle } => commands::yz(*dmax, *oracle),
            Command::Walls { lattice, bound } => commands::walls(lattice, *bound, digest),
            Command::Monodromy { lattice, delta, lambda } => commands::monodromy(lattice, delta, lambda, digest),
            Command::Fixture { name } => commands::fixture(name),
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("K3LAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("K3LAT_THREADS must be a positive integer, got '{v}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut digest = InputDigest::default();
    for arg in std::env::args().skip(1) {
        digest.add(arg.as_bytes());
    }
    let start = Instant::now();
    let outcome = match cli.command.run(&mut digest) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Validation(_)) { 1 } else { 2 });
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let text = outcome.text.clone();
    let report = RunReport::new(cli.command.name(), digest.finish(), outcome, elapsed);
    if cli.json {
        println!("{}", to_pretty_string(&serde_json::to_value(&report).expect("plain data")));
    } else {
        print!("{text}");
        for c in report.checks.iter().filter(|c| !c.passed) {
            let at = c.location.as_deref().map(|l| format!(" at {l}")).unwrap_or_default();
            let detail = c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default();
            eprintln!("FAIL {}{at}{detail}", c.name);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
