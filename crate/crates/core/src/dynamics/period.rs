use super::orbit::iterate;
use crate::geometry::{Point, Polygon};

/// Smallest `k <= max_period` such that the `k`-th iterate coincides with
/// the start as an unlabeled polygon: under the best cyclic relabeling no
/// vertex is farther than `tol * diameter` from its partner.
pub fn detect_period(p: &Polygon, m: Point, max_period: usize, tol: f64) -> Option<usize> {
    let orbit = iterate(p, m, max_period);
    let limit = tol * p.diameter();
    orbit
        .iterates
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, q)| q.relabeled_distance(p) < limit)
        .map(|(k, _)| k)
}
