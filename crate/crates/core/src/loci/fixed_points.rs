use std::f64::consts::TAU;

use serde::Serialize;

use crate::geometry::{regular_ngon, Point, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointRole {
    FixedPoint,
    Centroid,
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialPoint {
    pub point: Point,
    pub role: PointRole,
    pub label: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialPoints {
    pub polygon: Polygon,
    pub points: Vec<SpecialPoint>,
}

impl SpecialPoints {
    pub fn with_role(&self, role: PointRole) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().filter(move |p| p.role == role).map(|p| p.point)
    }
}

/// `(1 + sqrt 3, 0)`
pub fn k1() -> Point {
    Point::new(1.0 + 3f64.sqrt(), 0.0)
}

/// `(1 - sqrt 3, 0)`
pub fn k2() -> Point {
    Point::new(1.0 - 3f64.sqrt(), 0.0)
}

/// The six points where the unit-circumradius equilateral orbit is
/// 3-periodic, together with its centroid and vertices.
pub fn equilateral_fixed_points() -> SpecialPoints {
    let polygon = regular_ngon(3).expect("n = 3 is valid");
    let third = TAU / 3.0;
    let mut points = Vec::with_capacity(10);
    for (base, name) in [(k1(), ["K1", "K1+", "K1-"]), (k2(), ["K2", "K2+", "K2-"])] {
        for (angle, label) in [0.0, third, -third].into_iter().zip(name) {
            points.push(SpecialPoint {
                point: base.rotated(angle),
                role: PointRole::FixedPoint,
                label,
            });
        }
    }
    points.push(SpecialPoint {
        point: Point::ORIGIN,
        role: PointRole::Centroid,
        label: "G",
    });
    for (v, label) in polygon.vertices().iter().zip(["A", "B", "C"]) {
        points.push(SpecialPoint {
            point: *v,
            role: PointRole::Vertex,
            label,
        });
    }
    SpecialPoints { polygon, points }
}
