use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::orbit::iterate;
use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon};

/// Residual above which the vertexwise ratios are not accepted as one similarity.
pub const SIMILARITY_TOLERANCE: f64 = 1e-8;

/// Rotation by `alpha` and scaling by `s` about `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityParams {
    pub s: f64,
    /// Radians in `(-pi, pi]`.
    pub alpha: f64,
    pub center: Point,
    /// Largest vertexwise deviation of the ratios from `s e^{i alpha}`,
    /// relative to `s`.
    pub residual: f64,
}

impl SimilarityParams {
    pub fn apply(&self, p: Point) -> Point {
        self.center + (p - self.center).rotated(self.alpha) * self.s
    }

    pub fn log_s(&self) -> f64 {
        self.s.ln()
    }
}

/// Wraps an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// Unsigned difference of two angles, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

fn to_complex(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

/// Similarity about `center` read off the labeled correspondence
/// `from[i] -> to[i]`: `s` is the mean modulus of the ratios
/// `(to_i - center) / (from_i - center)` and `alpha` their circular mean
/// argument.
pub fn similarity_between(from: &Polygon, to: &Polygon, center: Point) -> Result<SimilarityParams> {
    if from.len() != to.len() {
        return Err(Error::invalid("polygons differ in vertex count"));
    }
    let c = to_complex(center);
    let mut ratios = Vec::with_capacity(from.len());
    for (a, b) in from.vertices().iter().zip(to.vertices()) {
        let da = to_complex(*a) - c;
        if da.norm() == 0.0 {
            return Err(Error::DegeneratePosition);
        }
        ratios.push((to_complex(*b) - c) / da);
    }
    let n = ratios.len() as f64;
    let s = ratios.iter().map(|z| z.norm()).sum::<f64>() / n;
    let heading: Complex64 = ratios.iter().map(|z| z / z.norm()).sum();
    let alpha = wrap_angle(heading.arg());
    let mean = Complex64::from_polar(s, alpha);
    let residual = ratios
        .iter()
        .map(|z| (z - mean).norm())
        .fold(0.0, f64::max)
        / s;
    if !(s.is_finite() && residual.is_finite()) {
        return Err(Error::InconsistentSimilarity {
            residual: f64::INFINITY,
            tolerance: SIMILARITY_TOLERANCE,
        });
    }
    Ok(SimilarityParams {
        s,
        alpha,
        center,
        residual,
    })
}

fn certify(params: SimilarityParams) -> Result<SimilarityParams> {
    if params.residual > SIMILARITY_TOLERANCE {
        return Err(Error::InconsistentSimilarity {
            residual: params.residual,
            tolerance: SIMILARITY_TOLERANCE,
        });
    }
    Ok(params)
}

/// Scale and rotation about `m` carrying `p` to its image after `n`
/// applications of the map, `n` being the vertex count.
pub fn extract_similarity(p: &Polygon, m: Point) -> Result<SimilarityParams> {
    let n = p.len();
    let iterates = centered_orbit(p, m, n)?;
    certify(with_center(similarity_between(&iterates[0], &iterates[n], Point::ORIGIN)?, m))
}

/// Orbit of `p - m` about the origin. The map commutes with translations,
/// and iterates shrinking onto a distant `m` would otherwise lose their
/// low digits to the offset.
fn centered_orbit(p: &Polygon, m: Point, k: usize) -> Result<Vec<Polygon>> {
    let orbit = iterate(&p.map_vertices(|v| v - m), Point::ORIGIN, k);
    match orbit.failure_error() {
        Some(err) => Err(err),
        None => Ok(orbit.iterates),
    }
}

fn with_center(params: SimilarityParams, center: Point) -> SimilarityParams {
    SimilarityParams { center, ..params }
}

/// Parameters of the `0 -> n` and `n -> 2n` blocks of one orbit.
pub fn repeat_similarity_check(
    p: &Polygon,
    m: Point,
) -> Result<(SimilarityParams, SimilarityParams)> {
    let n = p.len();
    let q = centered_orbit(p, m, 2 * n)?;
    let first = certify(with_center(similarity_between(&q[0], &q[n], Point::ORIGIN)?, m))?;
    let second = certify(with_center(similarity_between(&q[n], &q[2 * n], Point::ORIGIN)?, m))?;
    Ok((first, second))
}
