use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "harvest", version, about = "Entanglement harvesting with pointlike, smeared and delocalized detectors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Subinterval budget per adaptive integral.
    #[arg(long, global = true)]
    pub max_subdivisions: Option<usize>,
    /// Worker threads for grid evaluation (default: all processors).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one scenario and print it as JSON.
    Compute {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Evaluate a one- or two-axis grid and write it as CSV.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// First axis, e.g. `omega=0.1:5:50`, `mass=log:1e3:1e6:4` or `separation=0.1,0.5,1`.
        #[arg(long)]
        x: String,
        /// Optional second axis; rows are ordered with it varying fastest.
        #[arg(long)]
        y: Option<String>,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the data behind one of the figures, plus a JSON sidecar.
    Figure {
        /// Recipe id, `fig4` for all six panels or `all`.
        id: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Points per axis instead of the recipe default.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Convergence report towards the gamma or the infinite-mass limit.
    Limits {
        kind: LimitArg,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        separation: String,
        /// Base width `l` for gamma families, the fixed width for mass sweeps.
        #[arg(long, default_value = "1")]
        width: String,
        /// Product width*mass held fixed along a gamma family.
        #[arg(long)]
        lmc: Option<String>,
        /// Comma-separated, strictly descending.
        #[arg(long)]
        gammas: Option<String>,
        /// Comma-separated, strictly ascending.
        #[arg(long)]
        masses: Option<String>,
        #[arg(long, value_enum, default_value_t = PathArg::Taylor)]
        path: PathArg,
        /// Also write the rows as CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitArg {
    Gamma,
    Mass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Exact,
    Taylor,
}

impl PathArg {
    pub fn as_str(self) -> &'static str {
        match self {
            PathArg::Exact => "exact",
            PathArg::Taylor => "taylor",
        }
    }
}

/// Scenario keys as flags. Values stay textual so `4/9` works as on the
/// config side; flags override keys read from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Config file with `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long)]
    pub separation: Option<String>,
    /// pointlike, smeared or delocalized.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub width: Option<String>,
    #[arg(long)]
    pub mass: Option<String>,
    #[arg(long)]
    pub speed_ratio: Option<String>,
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
}

impl ScenarioArgs {
    pub fn flag_pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let fields = [
            ("omega", &self.omega),
            ("separation", &self.separation),
            ("model", &self.model),
            ("width", &self.width),
            ("mass", &self.mass),
            ("speed_ratio", &self.speed_ratio),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                out.push((k, v.clone()));
            }
        }
        if let Some(p) = self.path {
            out.push(("path", p.as_str().to_string()));
        }
        out
    }
}
