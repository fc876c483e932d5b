use std::fs;
use std::path::Path;

use serde::Serialize;
use udw_harvest::limits::{mass_limit_check, run_gamma_family, GammaFamily, LimitReport};
use udw_harvest::quadrature::QuadratureSpec;
use udw_harvest::scenario::{parse_number, parse_pairs, regime_check, PathChoice, RegimeVerdict, ScenarioConfig};
use udw_harvest::evaluate;

use crate::args::{LimitArg, PathArg, ScenarioArgs};
use crate::error::CliError;
use crate::grid::{Axis, SweepGrid};
use crate::output::{fmt_num, provenance, ComputeOutput};
use crate::recipes::{self, Assertion, AxisInfo, Figure, Parameter};

/// Config-file pairs overlaid with the flags.
pub fn scenario_pairs(args: &ScenarioArgs) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
            parse_pairs(&text)?
        }
        None => Vec::new(),
    };
    for (key, value) in args.flag_pairs() {
        match pairs.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => pairs.push((key.to_string(), value)),
        }
    }
    Ok(pairs)
}

pub fn scenario_config(args: &ScenarioArgs) -> Result<ScenarioConfig, CliError> {
    let pairs = scenario_pairs(args)?;
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    Ok(ScenarioConfig::from_pairs(&borrowed)?)
}

pub fn cmd_compute(args: &ScenarioArgs, spec: &QuadratureSpec) -> Result<String, CliError> {
    let cfg = scenario_config(args)?;
    let regime = regime_check(&cfg.model);
    if let RegimeVerdict::Warn(msg) = &regime.verdict {
        eprintln!("warning: {msg}");
    }
    let result = evaluate(&cfg, spec)?;
    serde_json::to_string(&ComputeOutput::new(&result, regime)).map_err(|e| CliError::io("json", e))
}

pub fn cmd_sweep(
    args: &ScenarioArgs,
    x: &str,
    y: Option<&str>,
    out: &Path,
    spec: &QuadratureSpec,
) -> Result<usize, CliError> {
    let x_axis = Axis::parse(x)?;
    let y_axis = y.map(Axis::parse).transpose()?;
    let fixed = scenario_pairs(args)?;
    let grid = SweepGrid::run(x_axis, y_axis, fixed, spec)?;
    grid.results.write_csv(out, &provenance(spec.rel_tol, spec.abs_tol))?;
    Ok(grid.results.failures())
}

#[derive(Serialize)]
struct Sidecar<'a> {
    id: &'a str,
    description: &'a str,
    csv: String,
    columns: Vec<String>,
    axes: &'a [AxisInfo],
    parameters: &'a [Parameter],
    assertions: &'a [Assertion],
    failed_cells: usize,
    version: &'static str,
    rel_tol: f64,
    abs_tol: f64,
}

/// Writes `<id>.csv` and `<id>.json` for each recipe; returns the figures
/// for reporting.
pub fn cmd_figure(id: &str, out: &Path, points: Option<usize>, spec: &QuadratureSpec) -> Result<Vec<Figure>, CliError> {
    let ids = recipes::expand(id)?;
    fs::create_dir_all(out).map_err(|e| CliError::io(out.display(), e))?;
    let mut done = Vec::new();
    for id in ids {
        let fig = recipes::build(&id, points, spec)?;
        let csv_name = format!("{id}.csv");
        fig.table.write_csv(&out.join(&csv_name), &provenance(spec.rel_tol, spec.abs_tol))?;
        let sidecar = Sidecar {
            id: &fig.id,
            description: &fig.description,
            csv: csv_name,
            columns: fig.table.header(),
            axes: &fig.axes,
            parameters: &fig.parameters,
            assertions: &fig.assertions,
            failed_cells: fig.table.failures(),
            version: env!("CARGO_PKG_VERSION"),
            rel_tol: spec.rel_tol,
            abs_tol: spec.abs_tol,
        };
        let json = serde_json::to_string_pretty(&sidecar).map_err(|e| CliError::io("json", e))?;
        let path = out.join(format!("{id}.json"));
        fs::write(&path, json + "\n").map_err(|e| CliError::io(path.display(), e))?;
        done.push(fig);
    }
    Ok(done)
}

fn number(flag: &str, text: &str) -> Result<f64, CliError> {
    parse_number(text).ok_or_else(|| CliError::Usage(format!("--{flag}: bad number `{text}`")))
}

fn list(flag: &str, text: Option<&str>) -> Result<Vec<f64>, CliError> {
    let text = text.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?;
    text.split(',').map(|s| number(flag, s.trim())).collect()
}

pub struct LimitRequest<'a> {
    pub kind: LimitArg,
    pub omega: &'a str,
    pub separation: &'a str,
    pub width: &'a str,
    pub lmc: Option<&'a str>,
    pub gammas: Option<&'a str>,
    pub masses: Option<&'a str>,
    pub path: PathArg,
}

pub fn cmd_limits(req: &LimitRequest, out: Option<&Path>, spec: &QuadratureSpec) -> Result<String, CliError> {
    let omega = number("omega", req.omega)?;
    let separation = number("separation", req.separation)?;
    let width = number("width", req.width)?;
    if omega <= 0.0 || separation <= 0.0 || width <= 0.0 {
        return Err(CliError::Usage("omega, separation and width must be positive".into()));
    }
    let path = match req.path {
        PathArg::Exact => PathChoice::Exact,
        PathArg::Taylor => PathChoice::Taylor,
    };
    let report = match req.kind {
        LimitArg::Gamma => {
            let lmc = number("lmc", req.lmc.ok_or_else(|| CliError::Usage("--lmc is required".into()))?)?;
            let family = GammaFamily::new(width, lmc, list("gammas", req.gammas)?);
            if family.gammas.iter().any(|&g| g <= 0.0) || lmc <= 0.0 {
                return Err(CliError::Usage("gammas and lmc must be positive".into()));
            }
            run_gamma_family(omega, separation, &family, path, spec)?
        }
        LimitArg::Mass => {
            let masses = list("masses", req.masses)?;
            if masses.iter().any(|&m| m <= 0.0) {
                return Err(CliError::Usage("masses must be positive".into()));
            }
            mass_limit_check(omega, separation, width, &masses, path, spec)?
        }
    };
    if let Some(path) = out {
        write_limit_csv(&report, path, spec)?;
    }
    serde_json::to_string(&report).map_err(|e| CliError::io("json", e))
}

fn write_limit_csv(report: &LimitReport, path: &Path, spec: &QuadratureSpec) -> Result<(), CliError> {
    let mut text = format!("# {}\n", provenance(spec.rel_tol, spec.abs_tol));
    text.push_str("param,p,abs_m,negativity,rel_err_p,rel_err_m\n");
    for row in &report.rows {
        let fields = [row.param, row.p, row.abs_m, row.negativity, row.rel_err_p, row.rel_err_m];
        text.push_str(&fields.iter().map(|&v| fmt_num(v)).collect::<Vec<_>>().join(","));
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}
