//! Axis parsing, grid assembly and parallel evaluation.

use rayon::prelude::*;
use udw_harvest::quadrature::{QuadError, QuadratureSpec};
use udw_harvest::scenario::{parse_number, ScenarioConfig};
use udw_harvest::{evaluate, HarvestError};

use crate::error::CliError;
use crate::output::{Cell, CellFailure, Table};

pub const AXIS_NAMES: [&str; 5] = ["omega", "separation", "width", "mass", "speed_ratio"];
pub const MAX_CELLS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: &str, values: Vec<f64>) -> Self {
        Axis { name: name.into(), values }
    }

    /// `name=a:b:n` (inclusive, linear), `name=log:a:b:n` or `name=v1,v2,...`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("axis `{text}`: {why}"));
        let (name, spec) = text.split_once('=').ok_or_else(|| bad("expected name=values"))?;
        let name = name.trim();
        if !AXIS_NAMES.contains(&name) {
            return Err(bad(&format!("unknown axis `{name}`, expected one of {}", AXIS_NAMES.join(", "))));
        }
        let num = |s: &str| parse_number(s).ok_or_else(|| bad(&format!("bad number `{s}`")));
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let values = match parts.as_slice() {
            [a, b, n] => linspace(num(a)?, num(b)?, count(n).ok_or_else(|| bad("bad count"))?),
            ["log", a, b, n] => {
                let (a, b) = (num(a)?, num(b)?);
                if a <= 0.0 || b <= 0.0 {
                    return Err(bad("log axes need positive ends"));
                }
                logspace(a, b, count(n).ok_or_else(|| bad("bad count"))?)
            }
            [list] => list.split(',').map(|s| num(s.trim())).collect::<Result<_, _>>()?,
            _ => return Err(bad("expected a:b:n, log:a:b:n or a list")),
        };
        if values.is_empty() {
            return Err(bad("no values"));
        }
        Ok(Axis::new(name, values))
    }
}

fn count(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&n| n > 0)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

#[derive(Debug, Clone)]
pub struct Metadata {
    pub version: &'static str,
    pub spec: QuadratureSpec,
    pub started: String,
}

/// A one- or two-axis grid over scenario keys with everything else fixed.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub x_axis: Axis,
    pub y_axis: Option<Axis>,
    pub fixed: Vec<(String, String)>,
    pub results: Table,
    pub metadata: Metadata,
}

impl SweepGrid {
    /// Builds every cell's config first so malformed input fails before any
    /// evaluation, then evaluates row-major with `y` varying fastest.
    pub fn run(
        x_axis: Axis,
        y_axis: Option<Axis>,
        fixed: Vec<(String, String)>,
        spec: &QuadratureSpec,
    ) -> Result<Self, CliError> {
        if let Some(y) = &y_axis {
            if y.name == x_axis.name {
                return Err(CliError::Usage(format!("axis `{}` given twice", y.name)));
            }
        }
        let ny = y_axis.as_ref().map_or(1, |y| y.values.len());
        let total = x_axis.values.len().saturating_mul(ny);
        if total > MAX_CELLS {
            return Err(CliError::Usage(format!("grid has {total} cells, the limit is {MAX_CELLS}")));
        }
        let mut keys = Vec::with_capacity(total);
        let mut configs = Vec::with_capacity(total);
        for &xv in &x_axis.values {
            let ys: Vec<Option<f64>> = match &y_axis {
                Some(y) => y.values.iter().map(|&v| Some(v)).collect(),
                None => vec![None],
            };
            for yv in ys {
                let mut pairs: Vec<(String, String)> =
                    fixed.iter().filter(|(k, _)| *k != x_axis.name && Some(k) != y_axis.as_ref().map(|y| &y.name)).cloned().collect();
                pairs.push((x_axis.name.clone(), format!("{xv:?}")));
                let mut row = vec![xv];
                if let (Some(y), Some(v)) = (&y_axis, yv) {
                    pairs.push((y.name.clone(), format!("{v:?}")));
                    row.push(v);
                }
                let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                configs.push(ScenarioConfig::from_pairs(&borrowed)?);
                keys.push(row);
            }
        }
        let started = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        let outcomes = evaluate_all(&configs, spec)?;
        let mut key_columns = vec![x_axis.name.clone()];
        if let Some(y) = &y_axis {
            key_columns.push(y.name.clone());
        }
        let cells = keys.into_iter().zip(outcomes).map(|(keys, outcome)| Cell { keys, outcome, extras: vec![] }).collect();
        Ok(SweepGrid {
            x_axis,
            y_axis,
            fixed,
            results: Table { key_columns, extra_columns: vec![], cells },
            metadata: Metadata { version: env!("CARGO_PKG_VERSION"), spec: *spec, started },
        })
    }
}

/// Evaluates configs in parallel; the output order follows the input order.
/// Numerical failures and regime rejections become cell failures, anything
/// else aborts.
pub fn evaluate_all(
    configs: &[ScenarioConfig],
    spec: &QuadratureSpec,
) -> Result<Vec<Result<udw_harvest::scenario::HarvestResult, CellFailure>>, CliError> {
    let raw: Vec<_> = configs.par_iter().map(|cfg| evaluate(cfg, spec)).collect();
    raw.into_iter()
        .map(|r| match r {
            Ok(v) => Ok(Ok(v)),
            Err(HarvestError::Quadrature(QuadError::InvalidSpec(msg))) => Err(CliError::Usage(msg)),
            Err(HarvestError::Quadrature(q)) => Ok(Err(CellFailure::NonConvergence(q.to_string()))),
            Err(HarvestError::RegimeRejected(msg)) => Ok(Err(CellFailure::Rejected(msg))),
            Err(e) => Err(CliError::from(e)),
        })
        .collect()
}
