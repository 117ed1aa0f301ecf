//! `entdim` — negativity-based counting of entangled dimensions.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use entdim_cli::commands::{self, ScanFormat};

#[derive(Parser)]
#[command(
    name = "entdim",
    about = "Negativity, Schmidt-number bounds and device-independent dimension certificates for bipartite states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute negativity, N_dim, the Schmidt-number lower bound and the
    /// PPT flag of a state file.
    Negativity {
        /// State file in `qstate v1` format.
        state_file: PathBuf,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep the axisymmetric triangle for a given local dimension and
    /// write per-point negativity, N_dim and SLOCC class.
    AxiScan {
        /// Local dimension d of the two qudits.
        #[arg(long)]
        d: usize,
        /// Number of grid points per axis over the bounding rectangle.
        #[arg(long)]
        grid: usize,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
    },
    /// Compute the device-independent lower bound on negativity and the
    /// certified number of entangled dimensions from a scenario file.
    DiBound {
        /// Scenario file in `discenario v1` format.
        scenario_file: PathBuf,
        /// Write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Negativity { state_file, json } => {
            commands::cmd_negativity(&state_file, json.as_deref())
        }
        Command::AxiScan {
            d,
            grid,
            out,
            format,
        } => {
            let format = match format {
                FileFormat::Csv => ScanFormat::Csv,
                FileFormat::Json => ScanFormat::Json,
            };
            commands::cmd_axi_scan(d, grid, &out, format)
        }
        Command::DiBound { scenario_file, out } => {
            commands::cmd_di_bound(&scenario_file, out.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
