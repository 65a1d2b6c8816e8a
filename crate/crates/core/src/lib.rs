//! Multibeam survey planning over a planar sloped seabed.
//!
//! The crate is split into four layers:
//!
//! - [`geometry`]: swath cross-section geometry for an arbitrary ship heading
//!   (local depth, effective cross-track slope, deep/shallow half-extents).
//! - [`planner`]: greedy deep-to-shallow placement of parallel north–south
//!   survey lines, each solved by bisection so adjacent swaths hit a target
//!   overlap ratio.
//! - [`verifier`]: independent checks of planner output (1D coverage raster,
//!   brute-force scans standing in for each bisection solve).
//! - [`cli`]: the `swathplan` command line front end.
//!
//! Lengths are meters and angles are degrees at every public interface.

pub mod bisect;
pub mod cli;
mod error;
pub mod geometry;
pub mod planner;
pub mod units;
pub mod verifier;

pub use error::{Error, Result};
pub use geometry::{PlanarSeabed, ShipFix, SwathCrossSection, TransducerSpec};
pub use planner::{DepthProfile, LinePlacement, PlanFailure, SurveyPlan, SurveyRegion};
pub use verifier::{CoverageReport, Finding, Verdict};
