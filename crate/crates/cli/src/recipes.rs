//! Parameter grids behind each figure, with the qualitative features each
//! one is expected to show as machine-checkable assertions.

use serde::Serialize;
use udw_harvest::quadrature::QuadratureSpec;
use udw_harvest::scenario::{HarvestResult, ModelVariant, PathChoice, ScenarioConfig};

use crate::error::CliError;
use crate::grid::{evaluate_all, linspace, logspace};
use crate::output::{Cell, Table};

pub const OMEGA_RANGE: (f64, f64) = (0.1, 5.0);
pub const SEPARATION_RANGE: (f64, f64) = (0.05, 5.0);
pub const DEFAULT_POINTS: usize = 50;

/// `(lmc, gamma)` per panel of the delocalized negativity maps.
pub const FIG4_PANELS: [(f64, f64); 6] = [(400.0, 0.4), (400.0, 0.3), (400.0, 0.2), (400.0, 0.1), (400.0, 0.05), (2000.0, 0.05)];

pub fn recipe_ids() -> Vec<String> {
    let mut ids: Vec<String> = ["fig1_top", "fig1_bottom", "fig2", "fig3"].iter().map(|s| s.to_string()).collect();
    ids.extend((1..=FIG4_PANELS.len()).map(|i| format!("fig4_panel{i}")));
    ids.extend(["fig5_top", "fig5_bottom", "fig6"].iter().map(|s| s.to_string()));
    ids
}

/// Expands `fig4` and `all` into concrete ids.
pub fn expand(id: &str) -> Result<Vec<String>, CliError> {
    match id {
        "all" => Ok(recipe_ids()),
        "fig4" => Ok((1..=FIG4_PANELS.len()).map(|i| format!("fig4_panel{i}")).collect()),
        _ if recipe_ids().iter().any(|r| r == id) => Ok(vec![id.to_string()]),
        _ => Err(CliError::Usage(format!("unknown figure `{id}`, expected one of {}, fig4 or all", recipe_ids().join(", ")))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Paper,
    Artifact,
}

#[derive(Debug, Clone, Serialize)]
pub struct Parameter {
    pub name: String,
    pub value: f64,
    pub source: Source,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxisInfo {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: &'static str,
    pub source: Source,
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub id: String,
    pub description: String,
    pub table: Table,
    pub parameters: Vec<Parameter>,
    pub axes: Vec<AxisInfo>,
    pub assertions: Vec<Assertion>,
}

fn param(name: &str, value: f64, source: Source) -> Parameter {
    Parameter { name: name.into(), value, source }
}

fn axis_info(name: &str, values: &[f64], spacing: &'static str, source: Source) -> AxisInfo {
    AxisInfo { name: name.into(), min: values[0], max: values[values.len() - 1], count: values.len(), spacing, source }
}

fn check(name: &str, holds: bool, detail: String) -> Assertion {
    Assertion { name: name.into(), holds, detail }
}

fn delocalized(width: f64, mass: f64, speed_ratio: f64) -> ModelVariant {
    ModelVariant::Delocalized { width, mass, speed_ratio, path: PathChoice::Taylor }
}

/// Evaluates `configs` and pairs them with their key values.
fn cells(keys: Vec<Vec<f64>>, configs: &[ScenarioConfig], spec: &QuadratureSpec) -> Result<Vec<Cell>, CliError> {
    let outcomes = evaluate_all(configs, spec)?;
    Ok(keys.into_iter().zip(outcomes).map(|(keys, outcome)| Cell { keys, outcome, extras: vec![] }).collect())
}

type Projection = fn(&HarvestResult) -> f64;

/// Adds one extra column per projection, computed from `configs` cell by
/// cell (NaN where the reference failed).
fn add_extras(
    table: &mut Table,
    configs: &[ScenarioConfig],
    columns: &[(&str, Projection)],
    spec: &QuadratureSpec,
) -> Result<(), CliError> {
    let outcomes = evaluate_all(configs, spec)?;
    for (cell, outcome) in table.cells.iter_mut().zip(outcomes) {
        for (_, f) in columns {
            cell.extras.push(outcome.as_ref().map_or(f64::NAN, f));
        }
    }
    table.extra_columns.extend(columns.iter().map(|(n, _)| n.to_string()));
    Ok(())
}

fn plane(n: usize) -> (Vec<f64>, Vec<f64>) {
    (linspace(OMEGA_RANGE.0, OMEGA_RANGE.1, n), linspace(SEPARATION_RANGE.0, SEPARATION_RANGE.1, n))
}

/// Omega by separation grid for one model, row-major with separation fastest.
fn plane_table(model: ModelVariant, n: usize, spec: &QuadratureSpec) -> Result<(Table, Vec<ScenarioConfig>), CliError> {
    let (omegas, seps) = plane(n);
    let mut keys = Vec::new();
    let mut configs = Vec::new();
    for &a in &omegas {
        for &s in &seps {
            keys.push(vec![a, s]);
            configs.push(ScenarioConfig::new(a, s, model));
        }
    }
    let table = Table { key_columns: vec!["omega".into(), "separation".into()], extra_columns: vec![], cells: cells(keys, &configs, spec)? };
    Ok((table, configs))
}

fn with_model(configs: &[ScenarioConfig], model: ModelVariant) -> Vec<ScenarioConfig> {
    configs.iter().map(|c| ScenarioConfig::new(c.omega, c.separation, model)).collect()
}

fn plane_axes(n: usize) -> Vec<AxisInfo> {
    let (omegas, seps) = plane(n);
    vec![axis_info("omega", &omegas, "linear", Source::Artifact), axis_info("separation", &seps, "linear", Source::Artifact)]
}

fn negativities(table: &Table) -> impl Iterator<Item = f64> + '_ {
    table.cells.iter().filter_map(|c| c.result().map(|r| r.negativity))
}

fn zero_region(table: &Table) -> Assertion {
    let zeros = negativities(table).filter(|&n| n == 0.0).count();
    check("zero-negativity region present", zeros > 0, format!("{zeros} of {} cells", table.cells.len()))
}

fn nonzero_region(table: &Table) -> Assertion {
    let nonzero = negativities(table).filter(|&n| n > 0.0).count();
    check("nonzero-negativity region present", nonzero > 0, format!("{nonzero} of {} cells", table.cells.len()))
}

/// Cells where the negativity exceeds the reference column.
fn bounded_by(table: &Table, column: &str, name: &str) -> Assertion {
    let idx = table.extra_index(column).expect("reference column");
    let mut violations = 0;
    let mut worst = 0.0f64;
    for cell in &table.cells {
        if let Some(r) = cell.result() {
            let excess = r.negativity - cell.extras[idx];
            if excess > 0.0 {
                violations += 1;
                worst = worst.max(excess);
            }
        }
    }
    check(name, violations == 0, format!("{violations} of {} cells exceed it, largest excess {worst:e}", table.cells.len()))
}

pub fn build(id: &str, points: Option<usize>, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let n = points.unwrap_or(DEFAULT_POINTS);
    if n < 2 {
        return Err(CliError::Usage("need at least 2 points per axis".into()));
    }
    match id {
        "fig1_top" => fig1(true, n, spec),
        "fig1_bottom" => fig1(false, n, spec),
        "fig2" => fig2(n, spec),
        "fig3" => fig3(n, spec),
        "fig5_top" => medium_line("fig5_top", 0.26, n, spec),
        "fig5_bottom" => fig5_bottom(n, spec),
        "fig6" => medium_line("fig6", 0.01, n, spec),
        _ => match id.strip_prefix("fig4_panel").and_then(|i| i.parse::<usize>().ok()) {
            Some(i) if (1..=FIG4_PANELS.len()).contains(&i) => fig4(i, n, spec),
            _ => Err(CliError::Usage(format!("unknown figure `{id}`"))),
        },
    }
}

fn fig1(smeared: bool, n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let model = if smeared { ModelVariant::Smeared { width: 1.0 } } else { ModelVariant::Pointlike };
    let (mut table, configs) = plane_table(model, n, spec)?;
    let mut parameters = vec![];
    let mut assertions = vec![nonzero_region(&table), zero_region(&table)];
    if smeared {
        parameters.push(param("width", 1.0, Source::Paper));
        add_extras(&mut table, &with_model(&configs, ModelVariant::Pointlike), &[("negativity_pointlike", |r| r.negativity)], spec)?;
        assertions.push(bounded_by(&table, "negativity_pointlike", "negativity <= pointlike negativity at every cell"));
    } else {
        let first = table.cells[0].result().map_or(f64::NAN, |r| r.negativity);
        assertions.push(check("nonzero at the smallest gap and separation", first > 0.0, format!("N = {first:e}")));
    }
    let (id, what) = if smeared { ("fig1_top", "Gaussian-smeared") } else { ("fig1_bottom", "pointlike") };
    Ok(Figure {
        id: id.into(),
        description: format!("Negativity of two {what} detectors over gap and separation"),
        table,
        parameters,
        axes: plane_axes(n),
        assertions,
    })
}

const FIG2_GAPS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
const FIG2_WIDTH: f64 = 1000.0;
const FIG2_SEPARATION: f64 = 1.0;

fn fig2(n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let masses = logspace(0.35, 100.0, n);
    let mut keys = Vec::new();
    let mut configs = Vec::new();
    for &a in &FIG2_GAPS {
        for &m in &masses {
            keys.push(vec![a, m]);
            configs.push(ScenarioConfig::new(a, FIG2_SEPARATION, delocalized(FIG2_WIDTH, m, 1.0)));
        }
    }
    let mut table = Table { key_columns: vec!["omega".into(), "mass".into()], extra_columns: vec![], cells: cells(keys, &configs, spec)? };
    add_extras(&mut table, &with_model(&configs, ModelVariant::Pointlike), &[("p_pointlike", |r| r.p_a)], spec)?;

    let mut rising = 0;
    let mut below = 0;
    let mut closing = 0;
    for curve in table.cells.chunks(n) {
        let ps: Vec<f64> = curve.iter().map(|c| c.result().map_or(f64::NAN, |r| r.p_a)).collect();
        let point = curve[0].extras[0];
        rising += ps.windows(2).all(|w| w[1] > w[0]) as usize;
        below += ps.iter().all(|&p| p < point) as usize;
        closing += ((point - ps[n - 1]).abs() < (point - ps[0]).abs()) as usize;
    }
    let curves = FIG2_GAPS.len();
    let assertions = vec![
        check("P increases with mass along each curve", rising == curves, format!("{rising} of {curves} curves")),
        check("P stays below the pointlike reference", below == curves, format!("{below} of {curves} curves")),
        check("P approaches the pointlike reference", closing == curves, format!("{closing} of {curves} curves")),
    ];
    let mut parameters = vec![param("width", FIG2_WIDTH, Source::Paper), param("separation", FIG2_SEPARATION, Source::Artifact)];
    parameters.extend(FIG2_GAPS.iter().map(|&a| param("omega", a, Source::Artifact)));
    Ok(Figure {
        id: "fig2".into(),
        description: "Excitation probability of a delocalized detector against its mass, with pointlike references".into(),
        table,
        parameters,
        axes: vec![axis_info("mass", &masses, "log", Source::Artifact)],
        assertions,
    })
}

const FIG3_GAP: f64 = 0.1;
const FIG3_PRODUCT: f64 = 500.0;
const FIG3_WIDTHS: [f64; 3] = [0.5, 1.0, 2.0];
const FIG3_NEAR: f64 = 2.0;

fn fig3(n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let seps = linspace(SEPARATION_RANGE.0, SEPARATION_RANGE.1, n);
    let mut keys = Vec::new();
    let mut configs = Vec::new();
    for &l in &FIG3_WIDTHS {
        let m = FIG3_PRODUCT / l;
        for &s in &seps {
            keys.push(vec![l, m, s]);
            configs.push(ScenarioConfig::new(FIG3_GAP, s, delocalized(l, m, 1.0)));
        }
    }
    let key_columns = vec!["width".into(), "mass".into(), "separation".into()];
    let mut table = Table { key_columns, extra_columns: vec![], cells: cells(keys, &configs, spec)? };
    add_extras(&mut table, &with_model(&configs, ModelVariant::Pointlike), &[("abs_m_pointlike", |r| r.m.norm())], spec)?;

    let abs_m = |c: &Cell| c.result().map_or(f64::NAN, |r| r.m.norm());
    // Beyond separations comparable to the widths the smeared kernel pushes
    // weight outward and the ordering inverts, so the near range is also
    // checked on its own.
    let near = seps.iter().filter(|&&s| s <= FIG3_NEAR).count();
    let ordered_at = |j: usize| {
        let column: Vec<f64> = (0..FIG3_WIDTHS.len()).map(|i| abs_m(&table.cells[i * n + j])).collect();
        column.windows(2).all(|w| w[0] > w[1])
    };
    let ordered = (0..n).filter(|&j| ordered_at(j)).count();
    let ordered_near = (0..near).filter(|&j| ordered_at(j)).count();
    let below_at = |j: usize| (0..FIG3_WIDTHS.len()).all(|i| abs_m(&table.cells[i * n + j]) < table.cells[i * n + j].extras[0]);
    let below = (0..n).filter(|&j| below_at(j)).count();
    let below_near = (0..near).filter(|&j| below_at(j)).count();
    let assertions = vec![
        check("|M| decreases with width at every separation", ordered == n, format!("{ordered} of {n} separations")),
        check(
            "|M| decreases with width for separations up to 2",
            ordered_near == near,
            format!("{ordered_near} of {near} separations"),
        ),
        check("|M| stays below the pointlike value", below == n, format!("{below} of {n} separations")),
        check(
            "|M| stays below the pointlike value for separations up to 2",
            below_near == near,
            format!("{below_near} of {near} separations"),
        ),
    ];
    let mut parameters = vec![param("omega", FIG3_GAP, Source::Paper), param("width*mass", FIG3_PRODUCT, Source::Paper)];
    parameters.extend(FIG3_WIDTHS.iter().map(|&l| param("width", l, Source::Artifact)));
    Ok(Figure {
        id: "fig3".into(),
        description: "Entangling term against separation at fixed width*mass, with the pointlike curve".into(),
        table,
        parameters,
        axes: vec![axis_info("separation", &seps, "linear", Source::Artifact)],
        assertions,
    })
}

fn fig4(panel: usize, n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let (lmc, gamma) = FIG4_PANELS[panel - 1];
    let (width, mass) = (gamma, lmc / gamma);
    let (mut table, configs) = plane_table(delocalized(width, mass, 1.0), n, spec)?;
    add_extras(&mut table, &with_model(&configs, ModelVariant::Pointlike), &[("negativity_pointlike", |r| r.negativity)], spec)?;
    let deviation: Vec<f64> =
        table.cells.iter().filter_map(|c| c.result().map(|r| (r.negativity - c.extras[0]).abs())).collect();
    let mad = deviation.iter().sum::<f64>() / deviation.len().max(1) as f64;
    let assertions = vec![
        nonzero_region(&table),
        check("mean deviation from the pointlike map is finite", mad.is_finite(), format!("{mad:e}")),
    ];
    Ok(Figure {
        id: format!("fig4_panel{panel}"),
        description: format!("Negativity of delocalized detectors, panel {panel} (lmc = {lmc}, gamma = {gamma})"),
        table,
        parameters: vec![
            param("lmc", lmc, Source::Paper),
            param("gamma", gamma, Source::Artifact),
            param("l", 1.0, Source::Artifact),
            param("width", width, Source::Artifact),
            param("mass", mass, Source::Artifact),
        ],
        axes: plane_axes(n),
        assertions,
    })
}

const MEDIUM_WIDTH: f64 = 4.0 / 9.0;
const MEDIUM_MASS: f64 = 900.0;
const MEDIUM_SEPARATION: f64 = 0.1;

/// Gap sweep in a medium at the packet parameters shared by both medium
/// figures, with vacuum columns for comparison.
fn medium_line(id: &str, speed_ratio: f64, n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let omegas = linspace(OMEGA_RANGE.0, OMEGA_RANGE.1, n);
    let model = delocalized(MEDIUM_WIDTH, MEDIUM_MASS, speed_ratio);
    let configs: Vec<ScenarioConfig> = omegas.iter().map(|&a| ScenarioConfig::new(a, MEDIUM_SEPARATION, model)).collect();
    let keys = omegas.iter().map(|&a| vec![a]).collect();
    let mut table = Table { key_columns: vec!["omega".into()], extra_columns: vec![], cells: cells(keys, &configs, spec)? };
    let vacuum = with_model(&configs, delocalized(MEDIUM_WIDTH, MEDIUM_MASS, 1.0));
    add_extras(
        &mut table,
        &vacuum,
        &[("p_vacuum", |r| r.p_a), ("abs_m_vacuum", |r| r.m.norm()), ("negativity_vacuum", |r| r.negativity)],
        spec,
    )?;
    let enhanced = table.cells.iter().filter(|c| c.result().is_some_and(|r| r.p_a > c.extras[0])).count();
    let max_n = negativities(&table).fold(0.0f64, f64::max);
    let mut assertions =
        vec![check("P exceeds the vacuum value at every gap", enhanced == n, format!("{enhanced} of {n} gaps"))];
    if speed_ratio < 0.05 {
        assertions.push(check("max negativity = 0", max_n == 0.0 && table.failures() == 0, format!("max N = {max_n:e}")));
    }
    Ok(Figure {
        id: id.into(),
        description: format!("Excitation probability, entangling term and negativity against the gap at c_s/c = {speed_ratio}"),
        table,
        parameters: vec![
            param("width", MEDIUM_WIDTH, Source::Paper),
            param("mass", MEDIUM_MASS, Source::Paper),
            param("speed_ratio", speed_ratio, Source::Paper),
            param("separation", MEDIUM_SEPARATION, Source::Paper),
        ],
        axes: vec![axis_info("omega", &omegas, "linear", Source::Artifact)],
        assertions,
    })
}

fn fig5_bottom(n: usize, spec: &QuadratureSpec) -> Result<Figure, CliError> {
    let (mut table, configs) = plane_table(delocalized(MEDIUM_WIDTH, MEDIUM_MASS, 0.26), n, spec)?;
    let vacuum = with_model(&configs, delocalized(MEDIUM_WIDTH, MEDIUM_MASS, 1.0));
    add_extras(&mut table, &vacuum, &[("negativity_vacuum", |r| r.negativity)], spec)?;
    let here = negativities(&table).filter(|&v| v > 0.0).count();
    let there = table.cells.iter().filter(|c| c.extras[0] > 0.0).count();
    let assertions = vec![
        nonzero_region(&table),
        check("nonzero region smaller than in vacuum", here < there, format!("{here} vs {there} cells")),
        bounded_by(&table, "negativity_vacuum", "negativity <= vacuum negativity at every cell"),
    ];
    Ok(Figure {
        id: "fig5_bottom".into(),
        description: "Negativity of delocalized detectors in a medium with c_s/c = 0.26".into(),
        table,
        parameters: vec![
            param("width", MEDIUM_WIDTH, Source::Paper),
            param("mass", MEDIUM_MASS, Source::Paper),
            param("speed_ratio", 0.26, Source::Paper),
        ],
        axes: plane_axes(n),
        assertions,
    })
}
