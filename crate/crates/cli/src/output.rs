//! Number formatting and the CSV/JSON shapes written by the commands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use udw_harvest::scenario::{HarvestResult, RegimeReport};

use crate::error::CliError;

/// Twelve significant digits, `%g` style, always with a `.` decimal point.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Why a grid cell has no value.
#[derive(Debug, Clone, PartialEq)]
pub enum CellFailure {
    NonConvergence(String),
    Rejected(String),
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub keys: Vec<f64>,
    pub outcome: Result<HarvestResult, CellFailure>,
    pub extras: Vec<f64>,
}

impl Cell {
    pub fn result(&self) -> Option<&HarvestResult> {
        self.outcome.as_ref().ok()
    }
}

/// Rows of a sweep or figure: key columns, the fixed result columns, then
/// any recipe-specific extras.
#[derive(Debug, Clone)]
pub struct Table {
    pub key_columns: Vec<String>,
    pub extra_columns: Vec<String>,
    pub cells: Vec<Cell>,
}

pub const RESULT_COLUMNS: [&str; 6] = ["p", "abs_m", "negativity", "err_p", "err_m", "converged"];

impl Table {
    pub fn header(&self) -> Vec<String> {
        let mut h = self.key_columns.clone();
        h.extend(RESULT_COLUMNS.iter().map(|s| s.to_string()));
        h.extend(self.extra_columns.iter().cloned());
        h
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.outcome.is_err()).count()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.key_columns.iter().position(|c| c == name)
    }

    pub fn extra_index(&self, name: &str) -> Option<usize> {
        self.extra_columns.iter().position(|c| c == name)
    }

    fn record(cell: &Cell) -> Vec<String> {
        let mut row: Vec<String> = cell.keys.iter().map(|&v| fmt_num(v)).collect();
        match &cell.outcome {
            Ok(r) => {
                for v in [r.p_a, r.m.norm(), r.negativity, r.err_p, r.err_m] {
                    row.push(fmt_num(v));
                }
                row.push("true".into());
            }
            Err(_) => {
                row.extend(std::iter::repeat_n("nan".to_string(), 5));
                row.push("false".into());
            }
        }
        row.extend(cell.extras.iter().map(|&v| fmt_num(v)));
        row
    }

    /// Writes `# comment` followed by the CSV body.
    pub fn write_csv(&self, path: &Path, comment: &str) -> Result<(), CliError> {
        let file = File::create(path).map_err(|e| CliError::io(path.display(), e))?;
        let mut out = BufWriter::new(file);
        self.write_to(&mut out, comment).map_err(|e| CliError::io(path.display(), e))?;
        out.flush().map_err(|e| CliError::io(path.display(), e))
    }

    pub fn write_to<W: Write>(&self, out: &mut W, comment: &str) -> std::io::Result<()> {
        writeln!(out, "# {comment}")?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.header())?;
        for cell in &self.cells {
            w.write_record(Self::record(cell))?;
        }
        w.flush()
    }
}

/// Comment line placed at the top of every CSV. The timestamp is the only
/// part that differs between reruns.
pub fn provenance(rel_tol: f64, abs_tol: f64) -> String {
    format!(
        "harvest {} generated {} rel_tol={:e} abs_tol={:e}",
        env!("CARGO_PKG_VERSION"),
        chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        rel_tol,
        abs_tol
    )
}

#[derive(Debug, Serialize)]
pub struct ComputeOutput {
    pub p_a: f64,
    pub p_b: f64,
    pub re_m: f64,
    pub im_m: f64,
    pub abs_m: f64,
    pub negativity: f64,
    pub err_p: f64,
    pub err_m: f64,
    pub regime: RegimeReport,
}

impl ComputeOutput {
    pub fn new(r: &HarvestResult, regime: RegimeReport) -> Self {
        ComputeOutput {
            p_a: r.p_a,
            p_b: r.p_b,
            re_m: r.m.re,
            im_m: r.m.im,
            abs_m: r.m.norm(),
            negativity: r.negativity,
            err_p: r.err_p,
            err_m: r.err_m,
            regime,
        }
    }
}
