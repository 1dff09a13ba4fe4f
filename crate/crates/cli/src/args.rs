use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crofton_core::algebra::Field;
use crofton_core::kernels::Metric;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "crofton",
    version,
    about = "Distance kernels, Crofton estimators and negative-type checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Scalar field of the hyperbolic space: r, c or h.
    #[arg(long, global = true, default_value = "r", value_parser = parse_field)]
    pub field: Field,
    /// Dimension n of H^n_F, P^n_R or S^n.
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,
    /// Monte Carlo samples per estimate.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampling radius around the base point for random configurations.
    #[arg(long, global = true, default_value_t = 3.0)]
    pub radius: f64,
    /// Coefficient bound for hypermetric scans.
    #[arg(long, global = true, default_value_t = 2)]
    pub bound: u32,
    /// Relative tolerance for negative-type decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Table)]
    pub output: Output,
    /// Write (d, estimate, stderr) rows of Crofton runs to this file.
    #[arg(long, global = true)]
    pub emit_csv: Option<PathBuf>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: crofton_core::Error| e.to_string())
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricArg {
    Hyperbolic,
    Projective,
    Sphere,
    JordanTrace,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Hyperbolic => Metric::Hyperbolic,
            MetricArg::Projective => Metric::Projective,
            MetricArg::Sphere => Metric::Sphere,
            MetricArg::JordanTrace => Metric::JordanTrace,
        }
    }
}

/// Points from a CSV file or from repeated `--point` values.
#[derive(Args, Debug, Clone)]
pub struct PointInput {
    #[arg(long, value_enum, default_value_t = MetricArg::Hyperbolic)]
    pub metric: MetricArg,
    /// CSV file with a `field=<r|c|h>,dim=<n>` header.
    #[arg(long, conflicts_with = "point")]
    pub points: Option<PathBuf>,
    /// One point as comma-separated reals; uses --field and --dim.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub point: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct KernelInput {
    #[command(flatten)]
    pub points: PointInput,
    /// CSV file holding a symmetric distance matrix.
    #[arg(long, conflicts_with_all = ["points", "point"])]
    pub matrix: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    /// The property should hold (no witness / no violation).
    Holds,
    /// The property should fail.
    Fails,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CroftonKind {
    Hyperplane,
    Halfspace,
    Horosphere,
    Projective,
    Sphere,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reproduction {
    Addendum,
    Projective,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Hyperbolic,
    Projective,
    Sphere,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedConfig {
    /// The 24-point quaternionic configuration in H²_H.
    Addendum,
    /// The six-point configuration in P²_R.
    Projective,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pairwise distances.
    Dist(PointInput),
    /// Test a distance matrix for negative type.
    CheckNegtype {
        #[command(flatten)]
        input: KernelInput,
        /// Expected outcome; defaults to what is known for the chosen space.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Scan integer coefficient vectors with |t_i| <= bound for hypermetric violations.
    ScanHypermetric {
        #[command(flatten)]
        input: KernelInput,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Embed √d in a Euclidean sphere.
    Embed {
        #[command(flatten)]
        input: KernelInput,
    },
    /// Monte Carlo Crofton estimates for pairs at the given distances.
    #[command(visible_alias = "mc")]
    Crofton {
        #[arg(value_enum)]
        kind: CroftonKind,
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0])]
        pairs: Vec<f64>,
        /// Extra distance beyond the farthest endpoint for the sampling ball.
        #[arg(long, default_value_t = 0.5)]
        margin: f64,
    },
    /// Rebuild one of the two explicit counterexamples.
    Reproduce {
        #[arg(value_enum)]
        which: Reproduction,
    },
    /// Random search for configurations that are not of negative type.
    SearchViolations {
        #[arg(long, value_enum, default_value_t = SpaceKind::Hyperbolic)]
        space: SpaceKind,
        /// Points per configuration.
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Start from a known configuration and jitter it.
        #[arg(long, value_enum)]
        seed_config: Option<SeedConfig>,
        #[arg(long, default_value_t = 0.05)]
        jitter: f64,
    },
}
