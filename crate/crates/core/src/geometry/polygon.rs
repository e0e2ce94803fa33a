use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::Point;
use crate::error::{Error, Result};

/// Relative tolerance (of the diameter) under which consecutive vertices are
/// considered coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-12;

/// An ordered, labeled polygon. Vertex `i` is joined to vertex `(i + 1) % n`;
/// the closing edge is implicit.
///
/// Serializes as a JSON array of `[x, y]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let polygon = Polygon { vertices };
        let limit = COINCIDENCE_TOLERANCE * polygon.diameter();
        for i in 0..n {
            let (a, b) = polygon.side(i);
            if a.distance(b) <= limit {
                return Err(Error::CoincidentVertices(i));
            }
        }
        Ok(polygon)
    }

    /// Construction for images of valid polygons under the maps in this crate;
    /// degeneracies surface later as map errors.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex with cyclic indexing.
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Side `i` runs from vertex `i` to vertex `i + 1`.
    pub fn side(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn sides(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.side(i))
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Vertex average.
    pub fn centroid(&self) -> Point {
        let n = self.len() as f64;
        let sum = self.vertices.iter().fold(Point::ORIGIN, |acc, &v| acc + v);
        sum * (1.0 / n)
    }

    /// Shoelace area, positive for counter-clockwise vertex order.
    pub fn signed_area(&self) -> f64 {
        0.5 * self.sides().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    pub fn map_vertices(&self, f: impl Fn(Point) -> Point) -> Polygon {
        Polygon::from_vertices_unchecked(self.vertices.iter().map(|&v| f(v)).collect())
    }

    pub fn homothety(&self, center: Point, ratio: f64) -> Polygon {
        self.map_vertices(|v| center + (v - center) * ratio)
    }

    pub fn rotate_about(&self, center: Point, angle: f64) -> Polygon {
        self.map_vertices(|v| center + (v - center).rotated(angle))
    }

    pub fn translate(&self, offset: Point) -> Polygon {
        self.map_vertices(|v| v + offset)
    }

    /// Horizontal stretch `x -> factor * x` about the y-axis.
    pub fn affine_stretch(&self, factor_x: f64) -> Polygon {
        self.map_vertices(|v| Point::new(factor_x * v.x, v.y))
    }

    /// Cyclic relabeling: vertex `i` of the result is vertex `i + shift` here.
    pub fn rotate_labels(&self, shift: usize) -> Polygon {
        let n = self.len();
        Polygon::from_vertices_unchecked((0..n).map(|i| self.vertex(i + shift % n)).collect())
    }

    /// Winding number of the boundary around `p`; zero outside for simple polygons.
    pub fn winding_number(&self, p: Point) -> i32 {
        let mut wn = 0;
        for (a, b) in self.sides() {
            let is_left = (b - a).cross(p - a);
            if a.y <= p.y {
                if b.y > p.y && is_left > 0.0 {
                    wn += 1;
                }
            } else if b.y <= p.y && is_left < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    pub fn contains(&self, p: Point) -> bool {
        self.winding_number(p) != 0
    }

    /// Unsigned distance from `p` to the nearest sideline (infinite line through a side).
    pub fn sideline_distance(&self, p: Point) -> f64 {
        self.sides()
            .map(|(a, b)| ((b - a).cross(p - a) / a.distance(b)).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest vertexwise distance to `other` under the best cyclic relabeling.
    ///
    /// Returns infinity for polygons with different vertex counts.
    pub fn relabeled_distance(&self, other: &Polygon) -> f64 {
        let n = self.len();
        if n != other.len() {
            return f64::INFINITY;
        }
        (0..n)
            .map(|shift| {
                (0..n)
                    .map(|i| self.vertex(i).distance(other.vertex(i + shift)))
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest vertexwise distance with labels held fixed.
    pub fn labeled_distance(&self, other: &Polygon) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| a.distance(*b))
            .fold(0.0, f64::max)
    }

    /// Symmetric Hausdorff distance between the vertex sets.
    pub fn vertex_hausdorff(&self, other: &Polygon) -> f64 {
        let directed = |a: &[Point], b: &[Point]| {
            a.iter()
                .map(|p| b.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        directed(&self.vertices, &other.vertices).max(directed(&other.vertices, &self.vertices))
    }

    /// Interior angles in radians, vertex by vertex.
    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let prev = self.vertex(i + n - 1);
                let cur = self.vertex(i);
                let next = self.vertex(i + 1);
                let u = prev - cur;
                let v = next - cur;
                u.cross(v).abs().atan2(u.dot(v))
            })
            .collect()
    }
}

impl TryFrom<Vec<Point>> for Polygon {
    type Error = Error;
    fn try_from(vertices: Vec<Point>) -> Result<Self> {
        Polygon::new(vertices)
    }
}

impl From<Polygon> for Vec<Point> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

/// Unit-circumradius regular polygon centered at the origin with its first
/// vertex at `(1, 0)`, counter-clockwise.
pub fn regular_ngon(n: usize) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let vertices = (0..n)
        .map(|k| Point::from_polar(1.0, TAU * k as f64 / n as f64))
        .collect();
    Ok(Polygon::from_vertices_unchecked(vertices))
}
