//! Swath geometry over a planar sloped seabed.
//!
//! Frame convention: +x is the horizontal projection of the seabed normal and
//! points downhill, so depth grows along +x. Headings are measured
//! counterclockwise from +x. A ship on heading β sees the seabed across-track
//! tilted by the effective slope γ, which ranges from 0 (running straight up or
//! down the slope) to α (running along a depth contour).

use crate::error::{Error, Result};

/// Margin below the grazing limit `90° - θ/2` inside which swaths are rejected.
pub const GRAZING_EPSILON_DEG: f64 = 1e-9;

/// Seabed plane with depth `reference_depth + x·tan(alpha)` along the frame's +x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarSeabed {
    reference_depth: f64,
    slope_alpha_deg: f64,
}

impl PlanarSeabed {
    pub fn new(reference_depth: f64, slope_alpha_deg: f64) -> Result<Self> {
        if !(reference_depth > 0.0 && reference_depth.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "reference depth must be positive, got {reference_depth} m"
            )));
        }
        check_slope(slope_alpha_deg)?;
        Ok(Self {
            reference_depth,
            slope_alpha_deg,
        })
    }

    /// Depth at the frame origin, in meters (positive down).
    pub fn reference_depth(&self) -> f64 {
        self.reference_depth
    }

    pub fn slope_alpha_deg(&self) -> f64 {
        self.slope_alpha_deg
    }
}

pub(crate) fn check_slope(slope_alpha_deg: f64) -> Result<()> {
    if (0.0..90.0).contains(&slope_alpha_deg) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "slope angle must lie in [0, 90) degrees, got {slope_alpha_deg}"
        )))
    }
}

/// Multibeam transducer, described by the full opening angle of its beam fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransducerSpec {
    opening_angle_deg: f64,
}

impl TransducerSpec {
    pub fn new(opening_angle_deg: f64) -> Result<Self> {
        if opening_angle_deg > 0.0 && opening_angle_deg < 180.0 {
            Ok(Self { opening_angle_deg })
        } else {
            Err(Error::InvalidParameter(format!(
                "opening angle must lie in (0, 180) degrees, got {opening_angle_deg}"
            )))
        }
    }

    pub fn opening_angle_deg(&self) -> f64 {
        self.opening_angle_deg
    }

    /// Largest effective slope for which the downhill beam edge still meets the seabed.
    pub fn grazing_limit_deg(&self) -> f64 {
        90.0 - 0.5 * self.opening_angle_deg
    }
}

/// Ship position given as a signed distance from the frame origin along a heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShipFix {
    distance_from_center: f64,
    heading_deg: f64,
}

impl ShipFix {
    pub fn new(distance_from_center: f64, heading_deg: f64) -> Result<Self> {
        if !distance_from_center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "distance must be finite, got {distance_from_center}"
            )));
        }
        if !(0.0..360.0).contains(&heading_deg) {
            return Err(Error::InvalidParameter(format!(
                "heading must lie in [0, 360) degrees, got {heading_deg}"
            )));
        }
        Ok(Self {
            distance_from_center,
            heading_deg,
        })
    }

    pub fn distance_from_center(&self) -> f64 {
        self.distance_from_center
    }

    pub fn heading_deg(&self) -> f64 {
        self.heading_deg
    }
}

/// Across-track profile of one swath.
///
/// The half-extents are measured along the sloped seabed, not horizontally; see
/// [`horizontal_footprint`] for the horizontal projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwathCrossSection {
    pub local_depth: f64,
    pub effective_gamma_deg: f64,
    /// Downhill half of the swath.
    pub half_deep: f64,
    /// Uphill half of the swath.
    pub half_shallow: f64,
    pub total_width: f64,
}

/// Water depth under the ship at `fix`.
pub fn along_line_depth(seabed: &PlanarSeabed, fix: &ShipFix) -> Result<f64> {
    let along_slope = fix.distance_from_center * fix.heading_deg.to_radians().cos();
    let depth = seabed.reference_depth + along_slope * seabed.slope_alpha_deg.to_radians().tan();
    if depth > 0.0 {
        Ok(depth)
    } else {
        Err(Error::SurfacedSeabed { depth })
    }
}

/// Effective across-track slope γ seen by a ship on heading `beta_deg` over a
/// seabed of dip `alpha_deg`.
///
/// Evaluates `cos γ = cos α / sqrt(cos²α + sin²β·sin²α)` in the equivalent form
/// `tan γ = |sin β|·tan α`, which keeps full precision as γ approaches zero where
/// the arccosine form loses about half the significant digits.
pub fn effective_slope(alpha_deg: f64, beta_deg: f64) -> f64 {
    let alpha = alpha_deg.to_radians();
    let beta = beta_deg.to_radians();
    (beta.sin().abs() * alpha.sin())
        .atan2(alpha.cos())
        .to_degrees()
}

type Vec3 = [f64; 3];

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Effective slope recovered from the plane intersection directly.
///
/// Intersects the vertical plane normal to the ship track with the seabed plane
/// and measures the dip of the intersection line against its own horizontal
/// projection. Independent of [`effective_slope`] and used to cross-check it.
pub fn effective_slope_numeric(alpha_deg: f64, beta_deg: f64) -> f64 {
    if alpha_deg == 0.0 {
        return 0.0;
    }
    let alpha = alpha_deg.to_radians();
    let beta = beta_deg.to_radians();
    let track_normal = [beta.cos(), beta.sin(), 0.0];
    let seabed_normal = [alpha.sin(), 0.0, alpha.cos()];
    let intersection = cross(track_normal, seabed_normal);
    let horizontal = [intersection[0], intersection[1], 0.0];
    if norm(intersection) == 0.0 || norm(horizontal) == 0.0 {
        return 0.0;
    }
    // atan2(|a×b|, a·b) instead of acos of the normalized dot product: the
    // latter is ill-conditioned for nearly parallel vectors.
    norm(cross(intersection, horizontal))
        .atan2(dot(intersection, horizontal))
        .to_degrees()
}

/// Swath half-extents by the law of sines in the two triangles formed by the
/// outer beams, the nadir ray and the seabed.
pub fn swath_cross_section(
    depth: f64,
    gamma_deg: f64,
    xdcr: &TransducerSpec,
) -> Result<SwathCrossSection> {
    if !(depth > 0.0 && depth.is_finite()) {
        return Err(Error::InvalidDepth(depth));
    }
    if gamma_deg.is_nan() || gamma_deg < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "effective slope must be non-negative, got {gamma_deg} degrees"
        )));
    }
    let limit_deg = xdcr.grazing_limit_deg();
    if gamma_deg >= limit_deg - GRAZING_EPSILON_DEG {
        return Err(Error::BeamGrazesSeabed {
            gamma_deg,
            limit_deg,
        });
    }
    let half_fan = (0.5 * xdcr.opening_angle_deg).to_radians();
    let gamma = gamma_deg.to_radians();
    let right = std::f64::consts::FRAC_PI_2;
    let reach = depth * half_fan.sin();
    let half_deep = reach / (right - half_fan - gamma).sin();
    let half_shallow = reach / (right - half_fan + gamma).sin();
    Ok(SwathCrossSection {
        local_depth: depth,
        effective_gamma_deg: gamma_deg,
        half_deep,
        half_shallow,
        total_width: half_deep + half_shallow,
    })
}

/// Horizontal `(deep, shallow)` extents of a swath lying on a seabed tilted by
/// `cross_track_slope_deg` across track.
pub fn horizontal_footprint(cs: &SwathCrossSection, cross_track_slope_deg: f64) -> (f64, f64) {
    let c = cross_track_slope_deg.to_radians().cos();
    (cs.half_deep * c, cs.half_shallow * c)
}

/// Coverage width grid over headings × distances, headings-major.
///
/// Cells that fail (surfaced seabed, grazing beam, out-of-range heading) hold
/// the error instead of a width.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthTable {
    pub headings_deg: Vec<f64>,
    pub distances_m: Vec<f64>,
    pub cells: Vec<Result<f64>>,
}

impl WidthTable {
    pub fn get(&self, heading_idx: usize, distance_idx: usize) -> &Result<f64> {
        &self.cells[heading_idx * self.distances_m.len() + distance_idx]
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, &[Result<f64>])> + '_ {
        self.headings_deg
            .iter()
            .copied()
            .zip(self.cells.chunks(self.distances_m.len().max(1)))
    }
}

pub fn width_cell(
    seabed: &PlanarSeabed,
    xdcr: &TransducerSpec,
    heading_deg: f64,
    distance_m: f64,
) -> Result<f64> {
    if distance_m < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "distance must be non-negative, got {distance_m} m"
        )));
    }
    let fix = ShipFix::new(distance_m, heading_deg)?;
    let depth = along_line_depth(seabed, &fix)?;
    let gamma = effective_slope(seabed.slope_alpha_deg, heading_deg);
    Ok(swath_cross_section(depth, gamma, xdcr)?.total_width)
}

pub fn width_table(
    seabed: &PlanarSeabed,
    xdcr: &TransducerSpec,
    headings_deg: &[f64],
    distances_m: &[f64],
) -> WidthTable {
    let cells = headings_deg
        .iter()
        .flat_map(|&h| {
            distances_m
                .iter()
                .map(move |&d| width_cell(seabed, xdcr, h, d))
        })
        .collect();
    WidthTable {
        headings_deg: headings_deg.to_vec(),
        distances_m: distances_m.to_vec(),
        cells,
    }
}
