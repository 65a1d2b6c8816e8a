//! Unit conversions.

/// International nautical mile.
pub const METERS_PER_NAUTICAL_MILE: f64 = 1852.0;

#[inline]
pub fn nm_to_m(nm: f64) -> f64 {
    nm * METERS_PER_NAUTICAL_MILE
}

#[inline]
pub fn m_to_nm(m: f64) -> f64 {
    m / METERS_PER_NAUTICAL_MILE
}
