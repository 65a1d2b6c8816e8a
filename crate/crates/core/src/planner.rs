//! Greedy survey line layout across a rectangular region.
//!
//! Lines run north–south. The seabed dips toward the west, so the region is
//! swept from the deep west boundary to the shallow east boundary. The first
//! line is placed so its deep-side swath edge sits on the west boundary; each
//! following line is pushed as far east as the target overlap allows.
//!
//! Overlap between consecutive lines follows the spacing rule
//! `d = (1 - η)·w̄`, with `w̄` the mean of the two slope-measured swath widths.
//! Boundary tests use horizontal footprints (half-extents times `cos α`).

use crate::bisect::bisect;
use crate::error::{Error, Result};
use crate::geometry::{self, TransducerSpec};
use crate::units;

/// Slack allowed above the target overlap when accepting a next-line solution.
pub const OVERLAP_WINDOW: f64 = 1e-4;

/// Headings of north–south lines relative to the east–west slope normal.
const NORTH_SOUTH_HEADING_DEG: f64 = 90.0;

/// Guards the greedy loop against near-zero spacings on shoaling edges.
const MAX_LINES: usize = 100_000;

/// Rectangular survey area whose seabed deepens linearly toward the west.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurveyRegion {
    width_ew: f64,
    length_ns: f64,
    center_depth: f64,
    slope_alpha_deg: f64,
}

impl SurveyRegion {
    pub fn new(
        width_ew: f64,
        length_ns: f64,
        center_depth: f64,
        slope_alpha_deg: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("east-west width", width_ew),
            ("north-south length", length_ns),
            ("center depth", center_depth),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        geometry::check_slope(slope_alpha_deg)?;
        Ok(Self {
            width_ew,
            length_ns,
            center_depth,
            slope_alpha_deg,
        })
    }

    /// Region dimensions given in nautical miles.
    pub fn from_nautical_miles(
        width_ew_nm: f64,
        length_ns_nm: f64,
        center_depth: f64,
        slope_alpha_deg: f64,
    ) -> Result<Self> {
        Self::new(
            units::nm_to_m(width_ew_nm),
            units::nm_to_m(length_ns_nm),
            center_depth,
            slope_alpha_deg,
        )
    }

    pub fn width_ew(&self) -> f64 {
        self.width_ew
    }

    pub fn length_ns(&self) -> f64 {
        self.length_ns
    }

    pub fn center_depth(&self) -> f64 {
        self.center_depth
    }

    pub fn slope_alpha_deg(&self) -> f64 {
        self.slope_alpha_deg
    }
}

/// East–west depth profile with x measured eastward from the west boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthProfile {
    pub west_edge_depth: f64,
    /// Depth gained between the region center and the west boundary.
    pub edge_offset_d1: f64,
    pub slope_alpha_deg: f64,
    pub width_ew: f64,
}

pub fn derive_profile(region: &SurveyRegion) -> DepthProfile {
    let edge_offset_d1 = 0.5 * region.width_ew * region.slope_alpha_deg.to_radians().tan();
    DepthProfile {
        west_edge_depth: region.center_depth + edge_offset_d1,
        edge_offset_d1,
        slope_alpha_deg: region.slope_alpha_deg,
        width_ew: region.width_ew,
    }
}

pub fn depth_at_x(profile: &DepthProfile, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "x must be non-negative, got {x}"
        )));
    }
    let depth = profile.west_edge_depth - x * profile.slope_alpha_deg.to_radians().tan();
    if depth > 0.0 {
        Ok(depth)
    } else {
        Err(Error::SurfacedSeabed { depth })
    }
}

/// Cross-section of a north–south line at `x`.
pub fn swath_at(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x: f64,
) -> Result<geometry::SwathCrossSection> {
    let depth = depth_at_x(profile, x)?;
    let gamma = geometry::effective_slope(profile.slope_alpha_deg, NORTH_SOUTH_HEADING_DEG);
    geometry::swath_cross_section(depth, gamma, xdcr)
}

/// Horizontal `(west, east)` edges of the swath of a line at `x`.
pub fn footprint_edges(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x: f64,
) -> Result<(f64, f64)> {
    let cs = swath_at(profile, xdcr, x)?;
    let (deep, shallow) = geometry::horizontal_footprint(&cs, profile.slope_alpha_deg);
    Ok((x - deep, x + shallow))
}

/// Overlap ratio implied by spacing two lines at `x_prev` and `x_next`:
/// `1 - (x_next - x_prev) / w̄`.
pub fn achieved_overlap(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x_prev: f64,
    x_next: f64,
) -> Result<f64> {
    let w_prev = swath_at(profile, xdcr, x_prev)?.total_width;
    let w_next = swath_at(profile, xdcr, x_next)?.total_width;
    Ok(1.0 - (x_next - x_prev) / (0.5 * (w_prev + w_next)))
}

/// Position of the first line, whose deep-side swath edge lands on the west
/// boundary (never inside the region).
pub fn first_line_position(profile: &DepthProfile, xdcr: &TransducerSpec) -> Result<f64> {
    let width_ew = profile.width_ew;
    // West edge left of 0 means the line can move further east.
    let west_of_boundary = |x: f64| -> Result<bool> {
        match footprint_edges(profile, xdcr, x) {
            Ok((west, _)) => Ok(west < 0.0),
            // A surfaced seabed has shrunk the swath to nothing: past the root.
            Err(Error::SurfacedSeabed { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    if west_of_boundary(width_ew)? {
        return Err(Error::NoFeasibleStart);
    }
    let (lo, _) = bisect(0.0, width_ew, 0.0, west_of_boundary)?;
    Ok(lo)
}

/// Next line east of `x_prev` whose overlap with the previous swath is
/// `eta_target` (to within [`OVERLAP_WINDOW`] above).
pub fn next_line_position(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x_prev: f64,
    eta_target: f64,
) -> Result<f64> {
    check_eta(eta_target)?;
    let w_prev = swath_at(profile, xdcr, x_prev)?.total_width;
    let lo = x_prev;
    let hi = x_prev + w_prev;
    let enough_overlap = |x: f64| -> Result<bool> {
        match swath_at(profile, xdcr, x) {
            Ok(cs) => Ok(1.0 - (x - x_prev) / (0.5 * (w_prev + cs.total_width)) >= eta_target),
            Err(Error::SurfacedSeabed { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let (x_next, _) = bisect(lo, hi, 0.0, enough_overlap)?;
    if x_next <= x_prev {
        return Err(Error::RegionExhausted { x_prev });
    }
    let eta = achieved_overlap(profile, xdcr, x_prev, x_next)
        .map_err(|_| Error::RegionExhausted { x_prev })?;
    if !(eta >= eta_target && eta <= eta_target + OVERLAP_WINDOW) {
        // The overlap jumps past the window only where the seabed surfaces.
        return Err(Error::RegionExhausted { x_prev });
    }
    Ok(x_next)
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "overlap ratio must lie in (0, 1), got {eta}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinePlacement {
    /// Eastward offset from the west boundary.
    pub x: f64,
    pub depth: f64,
    /// Slope-measured swath width.
    pub swath_width: f64,
    pub overlap_with_previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyPlan {
    pub placements: Vec<LinePlacement>,
    /// Length of each line, in meters.
    pub line_length: f64,
    pub line_count: usize,
    /// Summed track length, in nautical miles.
    pub total_track_length: f64,
}

impl SurveyPlan {
    pub fn new(placements: Vec<LinePlacement>, line_length: f64) -> Self {
        let line_count = placements.len();
        Self {
            placements,
            line_length,
            line_count,
            total_track_length: units::m_to_nm(line_count as f64 * line_length),
        }
    }

    /// Distances between consecutive lines.
    pub fn spacings(&self) -> Vec<f64> {
        self.placements
            .windows(2)
            .map(|w| w[1].x - w[0].x)
            .collect()
    }
}

/// Planning failure, with every line placed before the failure.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{error} (after {} placed lines)", partial.line_count)]
pub struct PlanFailure {
    pub error: Error,
    pub partial: SurveyPlan,
}

fn placement(
    profile: &DepthProfile,
    xdcr: &TransducerSpec,
    x: f64,
    overlap: Option<f64>,
) -> Result<LinePlacement> {
    let cs = swath_at(profile, xdcr, x)?;
    Ok(LinePlacement {
        x,
        depth: cs.local_depth,
        swath_width: cs.total_width,
        overlap_with_previous: overlap,
    })
}

/// Lays out lines west to east until the last swath's shallow edge reaches the
/// east boundary.
pub fn plan_survey(
    region: &SurveyRegion,
    xdcr: &TransducerSpec,
    eta_target: f64,
) -> Result<SurveyPlan, PlanFailure> {
    let profile = derive_profile(region);
    let mut placements: Vec<LinePlacement> = Vec::new();
    let fail = |error: Error, placements: &[LinePlacement]| PlanFailure {
        error,
        partial: SurveyPlan::new(placements.to_vec(), region.length_ns),
    };

    check_eta(eta_target).map_err(|e| fail(e, &placements))?;
    let first = first_line_position(&profile, xdcr)
        .and_then(|x| placement(&profile, xdcr, x, None))
        .map_err(|e| fail(e, &placements))?;
    placements.push(first);

    loop {
        let last = placements.last().expect("at least one line").x;
        let (_, east_edge) =
            footprint_edges(&profile, xdcr, last).map_err(|e| fail(e, &placements))?;
        if east_edge >= region.width_ew {
            break;
        }
        if placements.len() >= MAX_LINES {
            return Err(fail(Error::RegionExhausted { x_prev: last }, &placements));
        }
        let next = next_line_position(&profile, xdcr, last, eta_target)
            .and_then(|x| {
                let eta = achieved_overlap(&profile, xdcr, last, x)?;
                placement(&profile, xdcr, x, Some(eta))
            })
            .map_err(|e| fail(e, &placements))?;
        placements.push(next);
    }
    Ok(SurveyPlan::new(placements, region.length_ns))
}
