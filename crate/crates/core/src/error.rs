use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The seabed plane reaches or crosses the sea surface at the queried position.
    #[error("surfaced seabed: depth {depth:.6} m at the queried position")]
    SurfacedSeabed { depth: f64 },

    /// The downhill beam edge runs parallel to (or away from) the seabed.
    #[error("beam grazes seabed: slope {gamma_deg} deg reaches the limit {limit_deg} deg")]
    BeamGrazesSeabed { gamma_deg: f64, limit_deg: f64 },

    #[error("invalid depth: {0} m")]
    InvalidDepth(f64),

    /// The deep-side swath edge cannot reach the west boundary anywhere in the region.
    #[error("no feasible start: no line position puts the deep swath edge on the west boundary")]
    NoFeasibleStart,

    #[error(
        "region exhausted: no next line found after x = {x_prev:.6} m before the seabed surfaces"
    )]
    RegionExhausted { x_prev: f64 },

    #[error("no solution in bracket ({lo:.6}, {hi:.6}]")]
    NoSolutionInBracket { lo: f64, hi: f64 },
}
