use serde::Serialize;

use crate::error::Error;
use crate::geometry::{circumcenter_map, MapConfig, Point, Polygon};

/// Where an orbit stopped: applying the map to `iterates[step]` put an image
/// vertex at infinity because `m` lies on sideline `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitFailure {
    pub step: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub start: Polygon,
    pub m: Point,
    /// `iterates[0]` is the start; `iterates[j + 1]` is the image of `iterates[j]`.
    pub iterates: Vec<Polygon>,
    pub failure: Option<OrbitFailure>,
}

impl OrbitRecord {
    /// Number of map applications that succeeded.
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Polygon {
        self.iterates.last().expect("orbit always holds its start")
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }

    pub(crate) fn failure_error(&self) -> Option<Error> {
        self.failure.map(|f| Error::DegenerateOrbit {
            step: f.step,
            vertex: f.vertex,
        })
    }
}

/// Applies the circumcenter map about `m` up to `k` times, stopping at the
/// first degenerate step.
pub fn iterate(p: &Polygon, m: Point, k: usize) -> OrbitRecord {
    iterate_with(p, m, k, &MapConfig::default())
}

pub fn iterate_with(p: &Polygon, m: Point, k: usize, cfg: &MapConfig) -> OrbitRecord {
    let mut iterates = Vec::with_capacity(k + 1);
    iterates.push(p.clone());
    let mut failure = None;
    for step in 0..k {
        match circumcenter_map(&iterates[step], m, cfg) {
            Ok(next) => iterates.push(next),
            Err(Error::DegenerateVertex(vertex)) => {
                failure = Some(OrbitFailure { step, vertex });
                break;
            }
            Err(other) => unreachable!("circumcenter map only fails on sidelines: {other}"),
        }
    }
    OrbitRecord {
        start: p.clone(),
        m,
        iterates,
        failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_ngon;

    #[test]
    fn equilateral_centroid_two_periodic_as_set() {
        let t = regular_ngon(3).unwrap();
        let orbit = iterate(&t, Point::ORIGIN, 2);
        assert!(orbit.is_complete());
        assert_eq!(orbit.iterates.len(), 3);
        assert!(orbit.iterates[2].vertex_hausdorff(&t) < 1e-14);
    }

    #[test]
    fn k1_is_three_periodic_labeled() {
        let t = regular_ngon(3).unwrap();
        let k1 = Point::new(1.0 + 3f64.sqrt(), 0.0);
        let orbit = iterate(&t, k1, 3);
        assert!(orbit.iterates[3].labeled_distance(&t) < 1e-10);
    }

    #[test]
    fn sideline_failure_is_recorded() {
        let q = regular_ngon(4).unwrap();
        let orbit = iterate(&q, Point::new(0.5, 0.5), 4);
        assert_eq!(orbit.failure, Some(OrbitFailure { step: 0, vertex: 0 }));
        assert_eq!(orbit.steps(), 0);
        assert_eq!(orbit.last(), &q);
    }

    #[test]
    fn zero_steps() {
        let q = regular_ngon(5).unwrap();
        let orbit = iterate(&q, Point::new(2.0, 0.3), 0);
        assert_eq!(orbit.iterates, vec![q]);
        assert!(orbit.is_complete());
    }
}
