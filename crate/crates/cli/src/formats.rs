//! Line-oriented file formats and deterministic serialization.
//!
//! State files (`qstate v1`) list the nonzero entries of a density matrix;
//! scenario files (`discenario v1`) list the fixed moment-matrix entries.
//! All floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips `f64` exactly and keeps outputs byte-stable across runs.

use std::fmt::Write as _;

use num_complex::Complex64;

use entdim_core::{CMatrix64, DiScenario, State64};

/// Syntax-level error; the caller maps it to the parse exit code.
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

/// Formats a float with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses a `qstate v1` document into its dimensions and dense matrix.
/// Syntax only; state invariants are checked separately by the caller.
pub fn parse_qstate(text: &str) -> Result<(usize, usize, CMatrix64), ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return fail("empty state file");
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "qstate" || tokens[1] != "v1" {
        return fail(format!(
            "bad header {header:?}, expected `qstate v1 <d_a> <d_b>`"
        ));
    }
    let d_a: usize = tokens[2]
        .parse()
        .map_err(|_| ParseError(format!("bad d_a {:?}", tokens[2])))?;
    let d_b: usize = tokens[3]
        .parse()
        .map_err(|_| ParseError(format!("bad d_b {:?}", tokens[3])))?;
    if d_a == 0 || d_b == 0 {
        return fail("dimensions must be positive");
    }
    let dim = d_a * d_b;
    let mut matrix = CMatrix64::zeros(dim);
    let mut seen = vec![false; dim * dim];
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 4 {
            return fail(format!(
                "line {}: expected `<row> <col> <re> <im>`, got {line:?}",
                line_no + 1
            ));
        }
        let row: usize = tokens[0]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad row index", line_no + 1)))?;
        let col: usize = tokens[1]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad column index", line_no + 1)))?;
        let re: f64 = tokens[2]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad real part", line_no + 1)))?;
        let im: f64 = tokens[3]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad imaginary part", line_no + 1)))?;
        if row >= dim || col >= dim {
            return fail(format!(
                "line {}: index ({row}, {col}) outside a {dim}x{dim} matrix",
                line_no + 1
            ));
        }
        if seen[row * dim + col] {
            return fail(format!(
                "line {}: duplicate entry ({row}, {col})",
                line_no + 1
            ));
        }
        seen[row * dim + col] = true;
        matrix[(row, col)] = Complex64::new(re, im);
    }
    Ok((d_a, d_b, matrix))
}

/// Writes a state as a `qstate v1` document (nonzero entries only).
pub fn write_qstate(s: &State64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qstate v1 {} {}", s.d_a(), s.d_b());
    let dim = s.dim();
    for row in 0..dim {
        for col in 0..dim {
            let v = s.rho()[(row, col)];
            if v.re != 0.0 || v.im != 0.0 {
                let _ = writeln!(out, "{row} {col} {} {}", fmt17(v.re), fmt17(v.im));
            }
        }
    }
    out
}

/// Parses a `discenario v1` document. Scenario-level validation (index
/// ranges, duplicates, normalization entry) happens in [`DiScenario::new`].
pub fn parse_discenario(text: &str) -> Result<DiScenario<f64>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return fail("empty scenario file");
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "discenario" || tokens[1] != "v1" {
        return fail(format!(
            "bad header {header:?}, expected `discenario v1 <m_a> <m_b>`"
        ));
    }
    let m_a: usize = tokens[2]
        .parse()
        .map_err(|_| ParseError(format!("bad m_a {:?}", tokens[2])))?;
    let m_b: usize = tokens[3]
        .parse()
        .map_err(|_| ParseError(format!("bad m_b {:?}", tokens[3])))?;
    let mut constraints = Vec::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 6 {
            return fail(format!(
                "line {}: expected `<i> <j> <k> <l> <re> <im>`, got {line:?}",
                line_no + 1
            ));
        }
        let mut idx = [0usize; 4];
        for (slot, tok) in idx.iter_mut().zip(&tokens[..4]) {
            *slot = tok
                .parse()
                .map_err(|_| ParseError(format!("line {}: bad index {tok:?}", line_no + 1)))?;
        }
        let re: f64 = tokens[4]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad real part", line_no + 1)))?;
        let im: f64 = tokens[5]
            .parse()
            .map_err(|_| ParseError(format!("line {}: bad imaginary part", line_no + 1)))?;
        constraints.push(((idx[0], idx[1]), (idx[2], idx[3]), Complex64::new(re, im)));
    }
    DiScenario::new(m_a, m_b, constraints).map_err(|e| ParseError(e.to_string()))
}

/// Writes a scenario as a `discenario v1` document.
pub fn write_discenario(sc: &DiScenario<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "discenario v1 {} {}", sc.m_a(), sc.m_b());
    for c in sc.constraints() {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            c.row.0,
            c.row.1,
            c.col.0,
            c.col.1,
            fmt17(c.value.re),
            fmt17(c.value.im)
        );
    }
    out
}

/// serde_json formatter that renders every float with 17 significant
/// digits, keeping JSON output byte-deterministic.
pub struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value to JSON with the deterministic float format.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
