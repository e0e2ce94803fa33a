//! Counting the area-contracting and area-expanding regions of the plane
//! compactified by a point at infinity.

mod components;
mod field;
mod report;
mod sweep;

pub use components::{Component, RegionClass, RegionCounts, RegionMap};
pub use field::{
    sample_field, sample_field_masked, Cell, Chart, FieldGrid, FieldGridExport, Leaf, Sign,
    MAX_REFINE_DEPTH, MIN_RESOLUTION,
};
pub use report::{table1_counts, write_csv, CensusRow, RegionReport, CSV_HEADER};
pub use sweep::{
    conjectured_counts, random_star_polygon, regularity_comparison, stretch_sweep, RegularityReport,
    StretchEntry, StretchSweepResult, StretchTransition,
};

use components::Cover;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{regular_ngon, Point, Polygon, Rect};

/// Sampling and chart settings for a census.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CensusConfig {
    /// The plane chart covers `[-half_width, half_width]^2`.
    pub half_width: f64,
    /// Base cells per axis in each chart.
    pub resolution: usize,
    pub refine_depth: u32,
    /// Plane chart nodes count inside `|M| <= radius`; the inverted chart
    /// covers `|M| >= radius / 2`.
    pub radius: f64,
    /// Points with `|M| > infinity_radius` are collapsed into the point at
    /// infinity.
    pub infinity_radius: f64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            half_width: 6.0,
            resolution: 512,
            refine_depth: 4,
            radius: 4.0,
            infinity_radius: 32.0,
        }
    }
}

impl CensusConfig {
    pub fn with_resolution(resolution: usize, refine_depth: u32) -> Self {
        CensusConfig {
            resolution,
            refine_depth,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::invalid("census radius must be positive"));
        }
        if !(self.half_width >= self.radius) {
            return Err(Error::invalid("plane chart must contain the disk |M| <= radius"));
        }
        if !(self.infinity_radius > self.radius) {
            return Err(Error::invalid("infinity radius must exceed the census radius"));
        }
        Ok(())
    }

    fn inverted_half_width(&self) -> f64 {
        2.0 / self.radius
    }
}

/// Result of [`census_polygon`]: the report plus everything it was derived from.
#[derive(Debug, Clone)]
pub struct CensusOutcome {
    pub report: RegionReport,
    /// The polygon actually sampled: centered on its vertex average and scaled
    /// to unit circumradius.
    pub polygon: Polygon,
    pub config: CensusConfig,
    pub plane: FieldGrid,
    pub inverted: FieldGrid,
    pub regions: RegionMap,
}

impl CensusOutcome {
    pub fn component_at(&self, m: Point) -> Option<&Component> {
        self.regions.component_at(&self.plane, &self.inverted, self.config.radius, m)
    }
}

/// Vertex average at the origin, farthest vertex at distance 1. Region
/// counts are invariant under this similarity.
pub fn normalize_polygon(p: &Polygon) -> Polygon {
    let c = p.centroid();
    let shifted = p.translate(-c);
    let r = shifted.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    shifted.homothety(Point::ORIGIN, 1.0 / r)
}

/// Census of the regular `n`-gon.
pub fn census(n: usize, resolution: usize, refine_depth: u32) -> Result<RegionReport> {
    let p = regular_ngon(n)?;
    Ok(census_polygon(&p, &CensusConfig::with_resolution(resolution, refine_depth))?.report)
}

pub fn census_polygon(p: &Polygon, cfg: &CensusConfig) -> Result<CensusOutcome> {
    cfg.validate()?;
    let polygon = normalize_polygon(p);
    let plane_bounds = Rect::centered_square(cfg.half_width)?;
    let inv_half = cfg.inverted_half_width();
    let inv_bounds = Rect::centered_square(inv_half)?;
    let plane = sample_field_masked(&polygon, Chart::Plane, plane_bounds, cfg.resolution, cfg.refine_depth, Some(cfg.radius))?;
    let inverted = sample_field_masked(&polygon, Chart::Inverted, inv_bounds, cfg.resolution, cfg.refine_depth, Some(inv_half))?;
    let hole = 1.0 / cfg.infinity_radius;
    let cover = Cover {
        radius: cfg.radius,
        hole,
        ring: hole + 2.0 * (2.0 * inv_half / cfg.resolution as f64),
    };
    let (regions, coarse) = rayon::join(
        || RegionMap::build(&polygon, &plane, &inverted, cover, false),
        || (cfg.refine_depth > 0).then(|| RegionMap::build(&polygon, &plane, &inverted, cover, true).counts),
    );
    let report = RegionReport {
        n: polygon.len(),
        counts: regions.counts,
        coarse_counts: coarse,
        stable: coarse == Some(regions.counts),
        resolution: cfg.resolution,
        refine_depth: cfg.refine_depth,
        radius: cfg.radius,
    };
    Ok(CensusOutcome {
        report,
        polygon,
        config: *cfg,
        plane,
        inverted,
        regions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses_match_table() {
        for n in 3..=6 {
            let r = census(n, 128, 3).unwrap();
            assert_eq!(Some(r.counts), table1_counts(n), "n={n}");
            assert!(r.stable);
            assert_eq!(r.total_contracting(), conjectured_counts(n).unwrap());
        }
    }

    #[test]
    fn sidelines_are_expanding() {
        let p = regular_ngon(4).unwrap();
        let out = census_polygon(&p, &CensusConfig::with_resolution(128, 3)).unwrap();
        let first = out.component_at(Point::new(0.5, 0.5)).unwrap() as *const Component;
        for m in [Point::new(0.5, 0.5), Point::new(-1.7, 2.7), Point::new(3.0, -2.0), Point::new(20.0, 19.0)] {
            let c = out.component_at(m).unwrap();
            assert_eq!(c.sign, Sign::Expanding, "{m}");
            assert!(std::ptr::eq(c, first));
        }
        assert_eq!(out.component_at(Point::ORIGIN).unwrap().class, Some(RegionClass::Interior));
    }

    #[test]
    fn normalization() {
        let p = regular_ngon(5).unwrap().homothety(Point::ORIGIN, 3.0).translate(Point::new(2.0, -1.0));
        let q = normalize_polygon(&p);
        assert!(q.labeled_distance(&regular_ngon(5).unwrap()) < 1e-12);
    }

    #[test]
    fn config_validation() {
        let p = regular_ngon(3).unwrap();
        let bad = CensusConfig { radius: 8.0, ..CensusConfig::with_resolution(32, 1) };
        assert!(census_polygon(&p, &bad).is_err());
        let bad = CensusConfig { infinity_radius: 2.0, ..CensusConfig::with_resolution(32, 1) };
        assert!(census_polygon(&p, &bad).is_err());
        assert!(census(2, 64, 1).is_err());
        assert!(census(3, 8, 1).is_err());
    }

    #[test]
    fn depth_zero_is_never_stable() {
        let r = census(4, 64, 0).unwrap();
        assert!(!r.stable && r.coarse_counts.is_none());
    }
}
