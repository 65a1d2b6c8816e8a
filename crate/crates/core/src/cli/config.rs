//! Scenario configuration: a single JSON document, every key optional.
//!
//! ```json
//! {
//!   "seabed":      { "reference_depth_m": 120, "slope_deg": 1.5 },
//!   "transducer":  { "opening_angle_deg": 120 },
//!   "region":      { "width_ew_nm": 4, "length_ns_nm": 2, "center_depth_m": 110, "slope_deg": 1.5 },
//!   "eta_target": 0.10,
//!   "eta_min": 0.10,
//!   "eta_max": 0.20,
//!   "width_table": { "headings_deg": [0, 45, 90], "distances_nm": [0, 0.3] },
//!   "output":      { "format": "csv", "precision": 6 }
//! }
//! ```
//!
//! `seabed` drives `width-table`; `region` drives `plan`, `verify` and
//! `plot-data`. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::geometry::{PlanarSeabed, TransducerSpec};
use crate::planner::{check_eta, SurveyRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeabedConfig {
    pub reference_depth_m: f64,
    pub slope_deg: f64,
}

impl Default for SeabedConfig {
    fn default() -> Self {
        Self {
            reference_depth_m: 120.0,
            slope_deg: 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransducerConfig {
    pub opening_angle_deg: f64,
}

impl Default for TransducerConfig {
    fn default() -> Self {
        Self {
            opening_angle_deg: 120.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionConfig {
    pub width_ew_nm: f64,
    pub length_ns_nm: f64,
    pub center_depth_m: f64,
    pub slope_deg: f64,
}

impl Default for RegionConfig {
    fn default() -> Self {
        Self {
            width_ew_nm: 4.0,
            length_ns_nm: 2.0,
            center_depth_m: 110.0,
            slope_deg: 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WidthTableConfig {
    pub headings_deg: Vec<f64>,
    pub distances_nm: Vec<f64>,
}

impl Default for WidthTableConfig {
    fn default() -> Self {
        Self {
            headings_deg: vec![0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0],
            distances_nm: vec![0.0, 0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Format,
    /// Significant digits for lengths; ratios always print with 5 decimals.
    pub precision: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            precision: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seabed: SeabedConfig,
    pub transducer: TransducerConfig,
    pub region: RegionConfig,
    pub eta_target: f64,
    pub eta_min: f64,
    pub eta_max: f64,
    pub width_table: WidthTableConfig,
    pub output: OutputConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            seabed: SeabedConfig::default(),
            transducer: TransducerConfig::default(),
            region: RegionConfig::default(),
            eta_target: 0.10,
            eta_min: 0.10,
            eta_max: 0.20,
            width_table: WidthTableConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn seabed(&self) -> Result<PlanarSeabed, CliError> {
        Ok(PlanarSeabed::new(
            self.seabed.reference_depth_m,
            self.seabed.slope_deg,
        )?)
    }

    pub fn transducer(&self) -> Result<TransducerSpec, CliError> {
        Ok(TransducerSpec::new(self.transducer.opening_angle_deg)?)
    }

    pub fn region(&self) -> Result<SurveyRegion, CliError> {
        let r = &self.region;
        Ok(SurveyRegion::from_nautical_miles(
            r.width_ew_nm,
            r.length_ns_nm,
            r.center_depth_m,
            r.slope_deg,
        )?)
    }

    pub fn eta_target(&self) -> Result<f64, CliError> {
        check_eta(self.eta_target)?;
        Ok(self.eta_target)
    }

    pub fn eta_band(&self) -> Result<(f64, f64), CliError> {
        if (0.0..=1.0).contains(&self.eta_min)
            && (0.0..=1.0).contains(&self.eta_max)
            && self.eta_min <= self.eta_max
        {
            Ok((self.eta_min, self.eta_max))
        } else {
            Err(CliError::Config(format!(
                "overlap band must satisfy 0 <= eta_min <= eta_max <= 1, got [{}, {}]",
                self.eta_min, self.eta_max
            )))
        }
    }

    pub fn precision(&self) -> Result<usize, CliError> {
        match self.output.precision {
            1..=17 => Ok(self.output.precision),
            p => Err(CliError::Config(format!(
                "precision must lie in 1..=17, got {p}"
            ))),
        }
    }
}
