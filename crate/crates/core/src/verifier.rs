//! Independent checks of planner output.
//!
//! Two kinds of oracle live here. [`rasterize_coverage`] samples the region on
//! a 1D east–west grid and counts which swaths cover each cell, so coverage
//! gaps and overlaps are measured without reusing the planner's algebra.
//! [`brute_force_next_line`] and [`brute_force_first_line`] replace each
//! bisection solve with a plain linear scan.
//!
//! The raster is one-dimensional because every line runs north–south over a
//! seabed that only varies east–west; along-track coverage is uniform.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::TransducerSpec;
use crate::planner::{self, DepthProfile, SurveyPlan, SurveyRegion};

pub const DEFAULT_RESOLUTION_M: f64 = 0.1;

/// Absolute slack on rasterized overlap ratios in [`verify_plan`].
pub const OVERLAP_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    /// Cell size, in meters.
    pub resolution: f64,
    /// Sorted, disjoint `(start, end)` runs inside `[0, width_ew]` that no swath covers.
    pub uncovered_intervals: Vec<(f64, f64)>,
    /// Shared covered extent over the mean footprint extent, per adjacent pair.
    pub pairwise_overlap_ratios: Vec<f64>,
    /// `1 - spacing / mean slope width` per adjacent pair, recomputed from positions.
    pub nominal_overlap_ratios: Vec<f64>,
    pub max_multiplicity: usize,
}

impl CoverageReport {
    pub fn fully_covered(&self) -> bool {
        self.uncovered_intervals.is_empty()
    }
}

/// Inclusive cell index range whose centers fall inside `[west, east]`.
fn covered_cells(west: f64, east: f64, resolution: f64) -> (i64, i64) {
    let first = (west / resolution - 0.5).ceil() as i64;
    let last = (east / resolution - 0.5).floor() as i64;
    (first, last)
}

fn cell_count((first, last): (i64, i64)) -> i64 {
    (last - first + 1).max(0)
}

/// Rasterizes every line's horizontal footprint at `resolution` meters per cell.
///
/// Footprint extents are counted on the unbounded grid, so a swath spilling
/// past a region boundary keeps its full extent in the overlap ratios; gaps
/// and multiplicity are only reported inside the region.
pub fn rasterize_coverage(
    plan: &SurveyPlan,
    region: &SurveyRegion,
    xdcr: &TransducerSpec,
    resolution: f64,
) -> Result<CoverageReport> {
    let width = region.width_ew();
    if !(resolution > 0.0 && resolution <= width / 100.0) {
        return Err(Error::InvalidParameter(format!(
            "resolution must lie in (0, {}] m, got {resolution}",
            width / 100.0
        )));
    }
    let profile = planner::derive_profile(region);
    let ranges = plan
        .placements
        .iter()
        .map(|p| {
            let (west, east) = planner::footprint_edges(&profile, xdcr, p.x)?;
            Ok(covered_cells(west, east, resolution))
        })
        .collect::<Result<Vec<_>>>()?;

    // Cells 0..n tile [0, width]; the last one may hang over the east boundary.
    let n = ((width / resolution) - 1e-9).ceil() as i64;
    let mut delta = vec![0i64; n as usize + 1];
    for &(first, last) in &ranges {
        let (a, b) = (first.max(0), last.min(n - 1));
        if a <= b {
            delta[a as usize] += 1;
            delta[b as usize + 1] -= 1;
        }
    }

    let mut uncovered_intervals = Vec::new();
    let mut max_multiplicity = 0usize;
    let mut multiplicity = 0i64;
    let mut gap_start: Option<i64> = None;
    for k in 0..n {
        multiplicity += delta[k as usize];
        max_multiplicity = max_multiplicity.max(multiplicity as usize);
        match (multiplicity == 0, gap_start) {
            (true, None) => gap_start = Some(k),
            (false, Some(s)) => {
                uncovered_intervals.push((s as f64 * resolution, k as f64 * resolution));
                gap_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = gap_start {
        uncovered_intervals.push((s as f64 * resolution, width));
    }

    let pairwise_overlap_ratios = ranges
        .windows(2)
        .map(|w| {
            let shared = cell_count((w[0].0.max(w[1].0), w[0].1.min(w[1].1)));
            let mean = 0.5 * (cell_count(w[0]) + cell_count(w[1])) as f64;
            if mean > 0.0 {
                shared as f64 / mean
            } else {
                0.0
            }
        })
        .collect();

    let nominal_overlap_ratios = plan
        .placements
        .windows(2)
        .map(|w| planner::achieved_overlap(&profile, xdcr, w[0].x, w[1].x))
        .collect::<Result<Vec<_>>>()?;

    Ok(CoverageReport {
        resolution,
        uncovered_intervals,
        pairwise_overlap_ratios,
        nominal_overlap_ratios,
        max_multiplicity,
    })
}

/// Linear-scan replacement for [`planner::next_line_position`].
///
/// Walks candidates `x_prev + k·step` across `(x_prev, x_prev + W(x_prev)]` and
/// returns the last one whose overlap with the previous swath is still at least
/// `eta`: the widest spacing on the scan grid that meets the target, less than
/// one step short of the exact solution. On narrow swaths a single step can
/// move the overlap by more than [`OVERLAP_WINDOW`], so the window itself is not
/// required of the grid point.
pub fn brute_force_next_line(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x_prev: f64,
    eta: f64,
    step: f64,
) -> Result<f64> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let w_prev = planner::swath_at(profile, xdcr, x_prev)?.total_width;
    let hi = x_prev + w_prev;
    let no_solution = Error::NoSolutionInBracket { lo: x_prev, hi };
    let mut last_feasible: Option<f64> = None;
    let mut k = 1u64;
    loop {
        let x = x_prev + k as f64 * step;
        if x > hi {
            return Err(no_solution);
        }
        let w = match planner::swath_at(profile, xdcr, x) {
            Ok(cs) => cs.total_width,
            Err(_) => return Err(no_solution),
        };
        let achieved = 1.0 - (x - x_prev) / (0.5 * (w_prev + w));
        if achieved < eta {
            return last_feasible.ok_or(no_solution);
        }
        last_feasible = Some(x);
        k += 1;
    }
}

/// Linear-scan replacement for [`planner::first_line_position`]: the first
/// candidate `k·step` whose deep-side swath edge no longer reaches past the west
/// boundary.
pub fn brute_force_first_line(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    step: f64,
) -> Result<f64> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let mut k = 0u64;
    loop {
        let x = k as f64 * step;
        if x > profile.width_ew {
            return Err(Error::NoSolutionInBracket {
                lo: 0.0,
                hi: profile.width_ew,
            });
        }
        match planner::footprint_edges(profile, xdcr, x) {
            Ok((west, _)) if west >= 0.0 => return Ok(x),
            Ok(_) => {}
            Err(_) => {
                return Err(Error::NoSolutionInBracket {
                    lo: 0.0,
                    hi: profile.width_ew,
                })
            }
        }
        k += 1;
    }
}

/// One violation found by [`verify_plan`].
#[derive(Debug, Clone, PartialEq)]
pub enum Finding {
    DegeneratePlan,
    /// Line `index` cannot be evaluated (outside the region or over dry land).
    Unplaceable {
        index: usize,
        error: Error,
    },
    Uncovered {
        start: f64,
        end: f64,
    },
    OverlapOutOfBand {
        first: usize,
        ratio: f64,
        min: f64,
        max: f64,
    },
    WidthNotDecreasing {
        index: usize,
        previous: f64,
        current: f64,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::DegeneratePlan => write!(f, "degenerate plan: no survey lines"),
            Finding::Unplaceable { index, error } => write!(f, "line {}: {error}", index + 1),
            Finding::Uncovered { start, end } => {
                write!(f, "uncovered interval x = [{start:.3}, {end:.3}] m")
            }
            Finding::OverlapOutOfBand {
                first,
                ratio,
                min,
                max,
            } => write!(
                f,
                "lines {}-{}: overlap {ratio:.5} outside [{min:.5}, {max:.5}]",
                first + 1,
                first + 2
            ),
            Finding::WidthNotDecreasing {
                index,
                previous,
                current,
            } => write!(
                f,
                "line {}: width {current} m does not decrease from {previous} m",
                index + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub findings: Vec<Finding>,
    pub report: Option<CoverageReport>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Checks full coverage, overlap ratios within `[eta_min, eta_max]` (widened by
/// [`OVERLAP_TOLERANCE`]) and strictly decreasing widths, at the default
/// resolution.
pub fn verify_plan(
    plan: &SurveyPlan,
    region: &SurveyRegion,
    xdcr: &TransducerSpec,
    eta_min: f64,
    eta_max: f64,
) -> Verdict {
    let resolution = DEFAULT_RESOLUTION_M.min(region.width_ew() / 100.0);
    verify_plan_at(plan, region, xdcr, eta_min, eta_max, resolution)
}

pub fn verify_plan_at(
    plan: &SurveyPlan,
    region: &SurveyRegion,
    xdcr: &TransducerSpec,
    eta_min: f64,
    eta_max: f64,
    resolution: f64,
) -> Verdict {
    let mut findings = Vec::new();
    if plan.placements.is_empty() {
        findings.push(Finding::DegeneratePlan);
    }

    let profile = planner::derive_profile(region);
    let last = plan.placements.len().saturating_sub(1);
    for (index, p) in plan.placements.iter().enumerate() {
        // Only the closing line may sit east of the region.
        let east_ok = p.x <= region.width_ew() || index == last;
        if p.x < 0.0 || !east_ok {
            findings.push(Finding::Unplaceable {
                index,
                error: Error::InvalidParameter(format!("x = {} m lies outside the region", p.x)),
            });
        } else if let Err(error) = planner::swath_at(&profile, xdcr, p.x) {
            findings.push(Finding::Unplaceable { index, error });
        }
    }
    if !findings.is_empty() && !plan.placements.is_empty() {
        return Verdict {
            findings,
            report: None,
        };
    }

    let report = match rasterize_coverage(plan, region, xdcr, resolution) {
        Ok(r) => r,
        Err(error) => {
            findings.push(Finding::Unplaceable { index: 0, error });
            return Verdict {
                findings,
                report: None,
            };
        }
    };
    findings.extend(
        report
            .uncovered_intervals
            .iter()
            .map(|&(start, end)| Finding::Uncovered { start, end }),
    );
    let (lo, hi) = (eta_min - OVERLAP_TOLERANCE, eta_max + OVERLAP_TOLERANCE);
    for (first, &ratio) in report.pairwise_overlap_ratios.iter().enumerate() {
        if !(lo..=hi).contains(&ratio) {
            findings.push(Finding::OverlapOutOfBand {
                first,
                ratio,
                min: eta_min,
                max: eta_max,
            });
        }
    }
    for (index, w) in plan.placements.windows(2).enumerate() {
        if w[1].swath_width.partial_cmp(&w[0].swath_width) != Some(std::cmp::Ordering::Less) {
            findings.push(Finding::WidthNotDecreasing {
                index: index + 1,
                previous: w[0].swath_width,
                current: w[1].swath_width,
            });
        }
    }
    Verdict {
        findings,
        report: Some(report),
    }
}
