//! The three subcommands: single-state reports, triangle scans, and
//! device-independent bounds.

use std::fs;
use std::path::Path;

use serde::Serialize;

use entdim_core::axi::{self, AxiParams};
use entdim_core::bipartite::partial_transpose;
use entdim_core::di::ndim_lower_bound;
use entdim_core::negativity::{axi_ndim, axi_negativity, axi_schmidt_class};
use entdim_core::{
    certified_dimensions, di_lower_bound, min_eigenvalue, ndim, negativity,
    schmidt_number_lower_bound, BipartiteState, Error, SolverOptions, SolverStatus,
};

use crate::formats::{self, fmt17, ParseError};

/// Exit codes of the binary.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_STALLED: i32 = 5;

/// Command failure carrying its exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    fn parse(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_PARSE,
            message: msg.to_string(),
        }
    }

    fn io(context: &str, err: std::io::Error) -> Self {
        Self {
            code: EXIT_PARSE,
            message: format!("{context}: {err}"),
        }
    }
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::parse(e)
    }
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| CmdError::io(&format!("reading {}", path.display()), e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CmdError> {
    fs::write(path, contents).map_err(|e| CmdError::io(&format!("writing {}", path.display()), e))
}

#[derive(Serialize)]
struct NegativityReport {
    negativity: f64,
    n_dim: f64,
    schmidt_lower_bound: usize,
    ppt: bool,
}

/// `negativity <state-file> [--json <out>]`
pub fn cmd_negativity(state_path: &Path, json_out: Option<&Path>) -> Result<i32, CmdError> {
    let text = read_file(state_path)?;
    let (d_a, d_b, matrix) = formats::parse_qstate(&text)?;
    let state = BipartiteState::new(matrix, d_a, d_b).map_err(|e| CmdError {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    })?;

    let n = negativity(&state).map_err(|e| CmdError {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    })?;
    let nd = ndim(&state).unwrap_or(2.0 * n + 1.0);
    let bound = schmidt_number_lower_bound(&state).map_err(|e| CmdError {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    })?;
    let min_pt_eig = min_eigenvalue(&partial_transpose(&state)).map_err(|e| CmdError {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    })?;
    let report = NegativityReport {
        negativity: n,
        n_dim: nd,
        schmidt_lower_bound: bound.k,
        ppt: min_pt_eig >= -entdim_core::tol::PSD,
    };

    println!("negativity: {}", fmt17(report.negativity));
    println!("n_dim: {}", fmt17(report.n_dim));
    println!("schmidt_lower_bound: {}", report.schmidt_lower_bound);
    println!("ppt: {}", report.ppt);

    if let Some(path) = json_out {
        write_file(path, &(formats::to_json_string(&report) + "\n"))?;
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct ScanRow {
    x: f64,
    y: f64,
    valid: bool,
    negativity: Option<f64>,
    n_dim: Option<f64>,
    schmidt_class: Option<usize>,
}

#[derive(Serialize)]
struct ScanReport {
    d: usize,
    grid: usize,
    rows: Vec<ScanRow>,
}

fn scan_rows(d: usize, grid: usize) -> Vec<ScanRow> {
    let (x0, x1) = (axi::x_min::<f64>(d), axi::x_max::<f64>(d));
    let (y0, y1) = (axi::y_min::<f64>(d), axi::y_max::<f64>(d));
    let steps = (grid - 1) as f64;
    let mut rows = Vec::with_capacity(grid * grid);
    for iy in 0..grid {
        let y = ((grid - 1 - iy) as f64 * y0 + iy as f64 * y1) / steps;
        for ix in 0..grid {
            let x = ((grid - 1 - ix) as f64 * x0 + ix as f64 * x1) / steps;
            match AxiParams::new(d, x, y) {
                Ok(p) => rows.push(ScanRow {
                    x,
                    y,
                    valid: true,
                    negativity: Some(axi_negativity(&p)),
                    n_dim: Some(axi_ndim(&p)),
                    schmidt_class: Some(axi_schmidt_class(&p).k),
                }),
                Err(_) => rows.push(ScanRow {
                    x,
                    y,
                    valid: false,
                    negativity: None,
                    n_dim: None,
                    schmidt_class: None,
                }),
            }
        }
    }
    rows
}

fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("x,y,valid,negativity,n_dim,schmidt_class\n");
    for r in rows {
        let (n, nd, k) = match (r.negativity, r.n_dim, r.schmidt_class) {
            (Some(n), Some(nd), Some(k)) => (fmt17(n), fmt17(nd), k.to_string()),
            _ => (String::new(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt17(r.x),
            fmt17(r.y),
            r.valid,
            n,
            nd,
            k
        ));
    }
    out
}

/// `axi-scan --d <int> --grid <int> --out <path> --format csv|json`
pub fn cmd_axi_scan(
    d: usize,
    grid: usize,
    out: &Path,
    format: ScanFormat,
) -> Result<i32, CmdError> {
    if d < 2 {
        return Err(CmdError::parse("--d must be at least 2"));
    }
    if grid < 2 {
        return Err(CmdError::parse("--grid must be at least 2"));
    }
    let rows = scan_rows(d, grid);
    let valid = rows.iter().filter(|r| r.valid).count();
    let contents = match format {
        ScanFormat::Csv => scan_csv(&rows),
        ScanFormat::Json => formats::to_json_string(&ScanReport { d, grid, rows }) + "\n",
    };
    write_file(out, &contents)?;
    println!(
        "wrote {} grid points ({} inside the triangle) to {}",
        grid * grid,
        valid,
        out.display()
    );
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DiReport {
    bound_negativity: f64,
    bound_n_dim: f64,
    certified_dimensions: usize,
    status: &'static str,
    residual: f64,
    bisection_width: f64,
    iterations: usize,
}

/// `di-bound <scenario-file> --out <path>`
pub fn cmd_di_bound(scenario_path: &Path, out: Option<&Path>) -> Result<i32, CmdError> {
    let text = read_file(scenario_path)?;
    let scenario = formats::parse_discenario(&text)?;
    let outcome = match di_lower_bound(&scenario, &SolverOptions::default()) {
        Ok(outcome) => outcome,
        Err(Error::Infeasible { residual }) => {
            return Err(CmdError {
                code: EXIT_INFEASIBLE,
                message: format!(
                    "no moment matrix is consistent with the constraints (residual {residual:.3e})"
                ),
            })
        }
        Err(e) => {
            return Err(CmdError {
                code: EXIT_PARSE,
                message: e.to_string(),
            })
        }
    };

    let report = DiReport {
        bound_negativity: outcome.bound,
        bound_n_dim: ndim_lower_bound(outcome.bound),
        certified_dimensions: certified_dimensions(outcome.bound),
        status: match outcome.status {
            SolverStatus::Converged => "converged",
            SolverStatus::Stalled => "stalled",
        },
        residual: outcome.residual,
        bisection_width: outcome.width,
        iterations: outcome.iterations,
    };

    println!("bound_negativity: {}", fmt17(report.bound_negativity));
    println!("bound_n_dim: {}", fmt17(report.bound_n_dim));
    println!("certified_dimensions: {}", report.certified_dimensions);
    println!("status: {}", report.status);

    if let Some(path) = out {
        write_file(path, &(formats::to_json_string(&report) + "\n"))?;
    }
    Ok(match outcome.status {
        SolverStatus::Converged => EXIT_OK,
        SolverStatus::Stalled => EXIT_STALLED,
    })
}
