//! Similarity-invariant shape descriptors.

use serde::Serialize;

use super::similarity::{angle_distance, wrap_angle};
use crate::geometry::Polygon;

/// Side lengths (normalized to mean 1) and signed turning angles of a
/// polygon. Comparison through [`descriptor_distance`] ignores cyclic
/// relabeling, traversal direction, mirroring and scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeDescriptor {
    /// `sides[i]` is the length of side `i` over the mean side length.
    pub sides: Vec<f64>,
    /// `turns[i]` is the exterior (turning) angle at vertex `i`.
    pub turns: Vec<f64>,
}

impl ShapeDescriptor {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    fn mirrored(&self) -> ShapeDescriptor {
        ShapeDescriptor {
            sides: self.sides.clone(),
            turns: self.turns.iter().map(|t| -t).collect(),
        }
    }

    fn reversed(&self) -> ShapeDescriptor {
        let n = self.len();
        ShapeDescriptor {
            sides: (0..n).map(|j| self.sides[(2 * n - j - 1) % n]).collect(),
            turns: (0..n).map(|j| -self.turns[(n - j) % n]).collect(),
        }
    }

    fn shifted_gap(&self, other: &ShapeDescriptor, shift: usize) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let j = (i + shift) % n;
                let ds = (self.sides[i] - other.sides[j]).abs();
                let dt = angle_distance(self.turns[i], other.turns[j]);
                ds.max(dt)
            })
            .fold(0.0, f64::max)
    }
}

pub fn shape_descriptor(p: &Polygon) -> ShapeDescriptor {
    let n = p.len();
    let lengths: Vec<f64> = p.sides().map(|(a, b)| a.distance(b)).collect();
    let mean = lengths.iter().sum::<f64>() / n as f64;
    let turns = (0..n)
        .map(|i| {
            let incoming = p.vertex(i) - p.vertex(i + n - 1);
            let outgoing = p.vertex(i + 1) - p.vertex(i);
            wrap_angle(outgoing.angle() - incoming.angle())
        })
        .collect();
    ShapeDescriptor {
        sides: lengths.iter().map(|l| l / mean).collect(),
        turns,
    }
}

/// Largest componentwise gap between two descriptors under the best
/// alignment; zero exactly when the polygons are similar.
pub fn descriptor_distance(a: &ShapeDescriptor, b: &ShapeDescriptor) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let variants = [b.clone(), b.mirrored(), b.reversed(), b.reversed().mirrored()];
    variants
        .iter()
        .flat_map(|v| (0..a.len()).map(move |shift| a.shifted_gap(v, shift)))
        .fold(f64::INFINITY, f64::min)
}
