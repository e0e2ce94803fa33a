use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points are collinear within tolerance; circumcircle is degenerate")]
    Collinear,

    /// `m` lies on the sideline through vertices `i` and `i + 1`.
    #[error("center lies on sideline {0} (vertices {0} and {0}+1); image vertex escapes to infinity")]
    DegenerateVertex(usize),

    #[error("side {0} has zero length")]
    ZeroLengthSide(usize),

    #[error("perpendiculars at vertices {0} and {0}+1 are parallel")]
    ParallelPerpendiculars(usize),

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("vertices {0} and {0}+1 coincide")]
    CoincidentVertices(usize),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("orbit hit a degenerate configuration at step {step} (sideline {vertex})")]
    DegenerateOrbit { step: usize, vertex: usize },

    #[error("vertexwise ratios disagree: residual {residual:e} exceeds {tolerance:e}")]
    InconsistentSimilarity { residual: f64, tolerance: f64 },

    #[error("center is (nearly) on a sideline of the triangle")]
    DegeneratePosition,

    #[error("no area convention in {{1, 2, 4, 8}} reconciles the closed form with the orbit (best relative error {best_error:e})")]
    NoConventionFits { best_error: f64 },

    #[error("region counts changed at the last refinement level")]
    UnstableCount,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by a degenerate geometric configuration rather
    /// than malformed input.
    pub fn is_degenerate_geometry(&self) -> bool {
        matches!(
            self,
            Error::Collinear
                | Error::DegenerateVertex(_)
                | Error::ZeroLengthSide(_)
                | Error::ParallelPerpendiculars(_)
                | Error::DegenerateOrbit { .. }
                | Error::InconsistentSimilarity { .. }
                | Error::DegeneratePosition
        )
    }
}
