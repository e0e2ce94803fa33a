//! The circumcenter map, its inverse, and the pedal / antipedal / reflection
//! polygons of a point.
//!
//! Labeling: image vertex `i` of [`circumcenter_map`] is the circumcenter of
//! `(m, P_i, P_{i+1})`. The side-based constructions ([`pedal_polygon`],
//! [`reflection_polygon`]) put on vertex `i` whatever belongs to side `i`.
//! Because of this, a side-based construction applied after a vertex-pair
//! construction comes back shifted by one label (see the tests).

use super::{Point, Polygon, COINCIDENCE_TOLERANCE};
use crate::error::{Error, Result};

/// Tolerances for the circumcenter map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConfig {
    /// Twice the signed area of `(m, P_i, P_{i+1})` must exceed this fraction
    /// of the squared largest pairwise distance among the three points.
    pub collinearity_tolerance: f64,
}

impl MapConfig {
    pub const DEFAULT_TOLERANCE: f64 = 1e-12;

    pub fn new(collinearity_tolerance: f64) -> Result<Self> {
        if !(collinearity_tolerance > 0.0 && collinearity_tolerance.is_finite()) {
            return Err(Error::invalid("collinearity tolerance must be positive"));
        }
        Ok(MapConfig {
            collinearity_tolerance,
        })
    }
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            collinearity_tolerance: Self::DEFAULT_TOLERANCE,
        }
    }
}

/// Twice the signed area of `(a, b, c)` relative to the squared largest
/// pairwise distance. Zero for coincident or collinear points.
pub fn relative_twice_area(a: Point, b: Point, c: Point) -> f64 {
    let scale_sq = (a - b).norm_sq().max((b - c).norm_sq()).max((c - a).norm_sq());
    if scale_sq == 0.0 {
        return 0.0;
    }
    (b - a).cross(c - a) / scale_sq
}

fn nearly_collinear(a: Point, b: Point, c: Point, tol: f64) -> bool {
    relative_twice_area(a, b, c).abs() <= tol
}

/// Center of the circle through three points.
pub fn circumcenter(a: Point, b: Point, c: Point) -> Result<Point> {
    circumcenter_with_tolerance(a, b, c, MapConfig::DEFAULT_TOLERANCE)
}

pub fn circumcenter_with_tolerance(a: Point, b: Point, c: Point, tol: f64) -> Result<Point> {
    if nearly_collinear(a, b, c, tol) {
        return Err(Error::Collinear);
    }
    // Work relative to `c` to keep the magnitudes small.
    let u = a - c;
    let v = b - c;
    let d = 2.0 * u.cross(v);
    let uu = u.norm_sq();
    let vv = v.norm_sq();
    Ok(Point::new(
        c.x + (uu * v.y - vv * u.y) / d,
        c.y + (vv * u.x - uu * v.x) / d,
    ))
}

/// One application of the circumcenter map about `m`, using the explicit
/// closed-form vertex coordinates.
pub fn circumcenter_map(p: &Polygon, m: Point, cfg: &MapConfig) -> Result<Polygon> {
    let (xm, ym) = (m.x, m.y);
    let mut out = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let (a, b) = p.side(i);
        if nearly_collinear(m, a, b, cfg.collinearity_tolerance) {
            return Err(Error::DegenerateVertex(i));
        }
        let (xi, yi) = (a.x, a.y);
        let (xj, yj) = (b.x, b.y);
        let rho = xm * xm + ym * ym - xj * xj - yj * yj;

        let p_num = (yj - ym) * yi * yi
            + rho * yi
            + yj * yj * ym
            + (xi * xi - xm * xm - ym * ym) * yj
            + (xj * xj - xi * xi) * ym;
        let p_den = 2.0 * (xm - xj) * yi + 2.0 * (xi - xm) * yj + 2.0 * (xj - xi) * ym;

        let q_num = (xm - xj) * xi * xi - rho * xi - xj * xj * xm
            + (xm * xm + ym * ym - yi * yi) * xj
            + xm * (yi * yi - yj * yj);
        let q_den = 2.0 * (yj - ym) * xi + 2.0 * (ym - yi) * xj + 2.0 * (yi - yj) * xm;

        out.push(Point::new(p_num / p_den, q_num / q_den));
    }
    Ok(Polygon::from_vertices_unchecked(out))
}

fn check_sides(p: &Polygon) -> Result<()> {
    let limit = COINCIDENCE_TOLERANCE * p.diameter();
    for (i, (a, b)) in p.sides().enumerate() {
        if a.distance(b) <= limit {
            return Err(Error::ZeroLengthSide(i));
        }
    }
    Ok(())
}

/// Reflections of `m` about the sidelines: vertex `i` is the mirror image of
/// `m` in the line through vertices `i` and `i + 1`.
pub fn reflection_polygon(p: &Polygon, m: Point) -> Result<Polygon> {
    check_sides(p)?;
    let (xm, ym) = (m.x, m.y);
    let out = p
        .sides()
        .map(|(a, b)| {
            let (xi, yi) = (a.x, a.y);
            let (xj, yj) = (b.x, b.y);
            let dx = xj - xi;
            let dy = yj - yi;
            let r = dx * dx + dy * dy;
            let r_prime = dx * dx - dy * dy;
            let w = xi * yj - xj * yi;
            let u = (r_prime * xm + 2.0 * dy * dx * ym + 2.0 * dy * w) / r;
            let v = (-r_prime * ym + 2.0 * dy * dx * xm - 2.0 * dx * w) / r;
            Point::new(u, v)
        })
        .collect();
    Ok(Polygon::from_vertices_unchecked(out))
}

/// Inverse of [`circumcenter_map`], labeled so that
/// `inverse_circumcenter_map(&circumcenter_map(p, m)?, m)` returns `p` vertex
/// for vertex.
///
/// Vertex `i` of the preimage is the second intersection of the circles
/// centered at image vertices `i - 1` and `i` that pass through `m`, i.e. the
/// reflection of `m` in sideline `i - 1` of the image.
pub fn inverse_circumcenter_map(p: &Polygon, m: Point) -> Result<Polygon> {
    let n = p.len();
    Ok(reflection_polygon(p, m)?.rotate_labels(n - 1))
}

/// Feet of the perpendiculars from `m` onto the sidelines.
pub fn pedal_polygon(p: &Polygon, m: Point) -> Result<Polygon> {
    check_sides(p)?;
    let out = p
        .sides()
        .map(|(a, b)| {
            let d = b - a;
            let t = (m - a).dot(d) / d.norm_sq();
            a + d * t
        })
        .collect();
    Ok(Polygon::from_vertices_unchecked(out))
}

/// Polygon whose sidelines are perpendicular to `m - P_i` through each `P_i`.
///
/// Vertex `i` is the intersection of the perpendiculars at vertices `i` and
/// `i + 1`, the antipode of `m` on the circle through `m, P_i, P_{i+1}`.
pub fn antipedal_polygon(p: &Polygon, m: Point) -> Result<Polygon> {
    let tol = MapConfig::DEFAULT_TOLERANCE;
    let mut out = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let (a, b) = p.side(i);
        let u = m - a;
        let v = m - b;
        // Lines: u . x = u . a and v . x = v . b.
        let det = u.cross(v);
        if det.abs() <= tol * u.norm() * v.norm() {
            return Err(Error::ParallelPerpendiculars(i));
        }
        let ca = u.dot(a);
        let cb = v.dot(b);
        out.push(Point::new((ca * v.y - cb * u.y) / det, (u.x * cb - v.x * ca) / det));
    }
    Ok(Polygon::from_vertices_unchecked(out))
}
