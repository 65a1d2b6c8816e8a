//! `swathplan` command line front end.
//!
//! Exit statuses: 0 on success or a passing verification, 1 when a plan fails
//! verification or a scenario is infeasible, 2 on usage, config or parse errors.

pub mod config;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::geometry;
use crate::planner::{self, LinePlacement, PlanFailure, SurveyPlan};
use crate::units::nm_to_m;
use crate::verifier;

pub use config::{Format, ScenarioConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("plan file: {0}")]
    PlanFile(String),
    #[error("infeasible scenario: {0}")]
    Infeasible(Box<PlanFailure>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "swathplan",
    version,
    about = "Multibeam swath width tables and survey line planning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Swath coverage width over ship headings and distances from the center.
    WidthTable {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated headings in degrees.
        #[arg(long, value_delimiter = ',')]
        headings_deg: Option<Vec<f64>>,
        /// Comma-separated distances from the center in nautical miles.
        #[arg(long, value_delimiter = ',')]
        distances_nm: Option<Vec<f64>>,
    },
    /// Greedy north–south survey line plan for the region.
    Plan {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check a plan file for full coverage and in-band overlaps.
    Verify {
        /// Plan in the `plan` CSV or JSON format.
        plan: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Lowest acceptable overlap between adjacent swaths.
        #[arg(long)]
        eta_min: Option<f64>,
        /// Highest acceptable overlap between adjacent swaths.
        #[arg(long)]
        eta_max: Option<f64>,
        /// Raster cell size in meters.
        #[arg(long, default_value_t = verifier::DEFAULT_RESOLUTION_M)]
        resolution_m: f64,
    },
    /// JSON geometry for a 3D schematic of the planned lines.
    PlotData {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Scenario config (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Significant digits for lengths.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Seabed slope, applied to both the seabed and the region.
    #[arg(long)]
    pub alpha_deg: Option<f64>,
    /// Transducer opening angle.
    #[arg(long)]
    pub theta_deg: Option<f64>,
    /// Target overlap between adjacent swaths.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Depth at the center, applied to both the seabed and the region.
    #[arg(long)]
    pub center_depth_m: Option<f64>,
    /// East–west region width in nautical miles.
    #[arg(long)]
    pub region_ew_nm: Option<f64>,
    /// North–south region length in nautical miles.
    #[arg(long)]
    pub region_ns_nm: Option<f64>,
}

impl CommonArgs {
    /// Loads the config file (or defaults) and applies flag overrides.
    pub fn resolve(&self) -> Result<ScenarioConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => ScenarioConfig::load(path)?,
            None => ScenarioConfig::default(),
        };
        if let Some(v) = self.format {
            c.output.format = v;
        }
        if let Some(v) = self.precision {
            c.output.precision = v;
        }
        if let Some(v) = self.alpha_deg {
            c.seabed.slope_deg = v;
            c.region.slope_deg = v;
        }
        if let Some(v) = self.theta_deg {
            c.transducer.opening_angle_deg = v;
        }
        if let Some(v) = self.eta {
            c.eta_target = v;
        }
        if let Some(v) = self.center_depth_m {
            c.seabed.reference_depth_m = v;
            c.region.center_depth_m = v;
        }
        if let Some(v) = self.region_ew_nm {
            c.region.width_ew_nm = v;
        }
        if let Some(v) = self.region_ns_nm {
            c.region.length_ns_nm = v;
        }
        Ok(c)
    }
}

/// Command output: the main document plus an optional message for stderr.
pub struct Outcome {
    pub body: String,
    pub note: Option<String>,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::WidthTable { common, .. }
        | Command::Plan { common }
        | Command::Verify { common, .. }
        | Command::PlotData { common } => common.out.clone(),
    };
    let outcome = match dispatch(cli.command) {
        Ok(o) => o,
        Err(CliError::Infeasible(failure)) => Outcome {
            body: failure_body(&failure),
            note: Some(format!("error: {}", CliError::Infeasible(failure))),
            code: EXIT_FAILURE,
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    if let Some(note) = &outcome.note {
        let _ = writeln!(stderr, "{note}");
    }
    let written = match out_path {
        Some(path) => std::fs::write(&path, &outcome.body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(outcome.body.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

// The partial plan rides along in the failure; printed in the default CSV layout.
fn failure_body(failure: &PlanFailure) -> String {
    let mut body = format::PLAN_COLUMNS.join(",");
    body.push('\n');
    for p in &failure.partial.placements {
        body.push_str(&format!(
            "{},{},{}\n",
            format::fmt_sig(p.x, 6),
            p.overlap_with_previous
                .map(format::fmt_ratio)
                .unwrap_or_default(),
            format::fmt_sig(p.swath_width, 6)
        ));
    }
    body.push_str(&format!(
        "# partial plan: {} lines before failure\n",
        failure.partial.line_count
    ));
    body
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::WidthTable {
            common,
            headings_deg,
            distances_nm,
        } => {
            let mut config = common.resolve()?;
            if let Some(h) = headings_deg {
                config.width_table.headings_deg = h;
            }
            if let Some(d) = distances_nm {
                config.width_table.distances_nm = d;
            }
            cmd_width_table(&config)
        }
        Command::Plan { common } => cmd_plan(&common.resolve()?),
        Command::Verify {
            plan,
            common,
            eta_min,
            eta_max,
            resolution_m,
        } => {
            let mut config = common.resolve()?;
            if let Some(v) = eta_min {
                config.eta_min = v;
            }
            if let Some(v) = eta_max {
                config.eta_max = v;
            }
            let text = std::fs::read_to_string(&plan).map_err(|source| CliError::Io {
                path: plan.display().to_string(),
                source,
            })?;
            let forced = common.format;
            cmd_verify(&text, forced, &config, resolution_m)
        }
        Command::PlotData { common } => {
            if common.format == Some(Format::Csv) {
                return Err(CliError::Usage("plot-data only writes JSON".into()));
            }
            cmd_plot_data(&common.resolve()?)
        }
    }
}

fn ok(body: String) -> Outcome {
    Outcome {
        body,
        note: None,
        code: EXIT_OK,
    }
}

pub fn cmd_width_table(config: &ScenarioConfig) -> Result<Outcome, CliError> {
    let seabed = config.seabed()?;
    let xdcr = config.transducer()?;
    let precision = config.precision()?;
    let distances_nm = &config.width_table.distances_nm;
    let distances_m: Vec<f64> = distances_nm.iter().map(|&d| nm_to_m(d)).collect();
    let table = geometry::width_table(
        &seabed,
        &xdcr,
        &config.width_table.headings_deg,
        &distances_m,
    );
    let body = match config.output.format {
        Format::Csv => format::width_table_csv(&table, distances_nm, precision),
        Format::Json => format::width_table_json(&table, distances_nm, precision),
    };
    Ok(ok(body))
}

pub fn cmd_plan(config: &ScenarioConfig) -> Result<Outcome, CliError> {
    let region = config.region()?;
    let xdcr = config.transducer()?;
    let eta = config.eta_target()?;
    let precision = config.precision()?;
    let plan =
        planner::plan_survey(&region, &xdcr, eta).map_err(|f| CliError::Infeasible(Box::new(f)))?;
    let profile = planner::derive_profile(&region);
    let body = match config.output.format {
        Format::Csv => format::plan_csv(&plan, &profile, precision),
        Format::Json => format::plan_json(&plan, &profile, precision),
    };
    Ok(Outcome {
        body,
        note: Some(format::plan_summary(&plan, &profile, precision)),
        code: EXIT_OK,
    })
}

/// Rebuilds a plan from file rows, recomputing depths from the region.
pub fn plan_from_rows(
    rows: &[format::PlanRow],
    config: &ScenarioConfig,
) -> Result<SurveyPlan, CliError> {
    let region = config.region()?;
    let profile = planner::derive_profile(&region);
    let placements = rows
        .iter()
        .map(|r| LinePlacement {
            x: r.x_m,
            depth: planner::depth_at_x(&profile, r.x_m).unwrap_or(f64::NAN),
            swath_width: r.width_m,
            overlap_with_previous: r.overlap_prev,
        })
        .collect();
    Ok(SurveyPlan::new(placements, region.length_ns()))
}

pub fn cmd_verify(
    text: &str,
    forced: Option<Format>,
    config: &ScenarioConfig,
    resolution: f64,
) -> Result<Outcome, CliError> {
    let rows = match forced {
        Some(Format::Csv) => format::parse_plan_csv(text)?,
        Some(Format::Json) => format::parse_plan_json(text)?,
        None => format::parse_plan(text)?,
    };
    let region = config.region()?;
    let xdcr = config.transducer()?;
    let (eta_min, eta_max) = config.eta_band()?;
    if !(resolution > 0.0 && resolution <= region.width_ew() / 100.0) {
        return Err(CliError::Usage(format!(
            "resolution must lie in (0, {}] m",
            region.width_ew() / 100.0
        )));
    }
    let plan = plan_from_rows(&rows, config)?;
    let verdict = verifier::verify_plan_at(&plan, &region, &xdcr, eta_min, eta_max, resolution);

    let mut body = String::new();
    body.push_str(if verdict.passed() { "PASS\n" } else { "FAIL\n" });
    body.push_str(&format!("lines: {}\n", plan.line_count));
    if let Some(report) = &verdict.report {
        body.push_str(&format!("resolution_m: {}\n", report.resolution));
        body.push_str(&format!(
            "uncovered_intervals: {}\n",
            report.uncovered_intervals.len()
        ));
        body.push_str(&format!("max_multiplicity: {}\n", report.max_multiplicity));
        body.push_str("pair,raster_overlap,nominal_overlap\n");
        for (i, (raster, nominal)) in report
            .pairwise_overlap_ratios
            .iter()
            .zip(&report.nominal_overlap_ratios)
            .enumerate()
        {
            body.push_str(&format!(
                "{}-{},{},{}\n",
                i + 1,
                i + 2,
                format::fmt_ratio(*raster),
                format::fmt_ratio(*nominal)
            ));
        }
    }
    for f in &verdict.findings {
        body.push_str(&format!("finding: {f}\n"));
    }
    let code = if verdict.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok(Outcome {
        body,
        note: None,
        code,
    })
}

pub fn cmd_plot_data(config: &ScenarioConfig) -> Result<Outcome, CliError> {
    let region = config.region()?;
    let xdcr = config.transducer()?;
    let eta = config.eta_target()?;
    let precision = config.precision()?;
    let plan =
        planner::plan_survey(&region, &xdcr, eta).map_err(|f| CliError::Infeasible(Box::new(f)))?;
    let profile = planner::derive_profile(&region);
    Ok(ok(format::plot_data_json(
        &plan, &region, &profile, precision,
    )))
}
