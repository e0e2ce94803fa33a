use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{census_polygon, CensusConfig, RegionReport};
use crate::error::{Error, Result};
use crate::geometry::{regular_ngon, Point, Polygon};

/// Conjectured number of contracting regions of the regular `n`-gon.
pub fn conjectured_counts(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    Ok(if n % 2 == 1 {
        let r_star = usize::from(n != 3);
        r_star + n * (n + 1) / 2
    } else {
        1 + n * n / 2
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchEntry {
    pub t: f64,
    pub report: RegionReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StretchTransition {
    pub t_before: f64,
    pub t_after: f64,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchSweepResult {
    /// Strictly increasing in `t`.
    pub entries: Vec<StretchEntry>,
}

impl StretchSweepResult {
    /// Consecutive grid values between which the contracting total changes.
    pub fn transitions(&self) -> Vec<StretchTransition> {
        self.entries
            .windows(2)
            .filter_map(|w| {
                let (a, b) = (w[0].report.total_contracting(), w[1].report.total_contracting());
                (a != b).then_some(StretchTransition {
                    t_before: w[0].t,
                    t_after: w[1].t,
                    from: a,
                    to: b,
                })
            })
            .collect()
    }
}

/// Census of the equilateral stretched horizontally by each `t` on a uniform
/// grid from `t_min` to `t_max`.
pub fn stretch_sweep(t_min: f64, t_max: f64, steps: usize, cfg: &CensusConfig) -> Result<StretchSweepResult> {
    if !(t_min >= 1.0) || !t_max.is_finite() || t_max < t_min {
        return Err(Error::invalid("stretch sweep needs 1 <= t_min <= t_max"));
    }
    if steps == 0 || (steps > 1 && t_max == t_min) {
        return Err(Error::invalid("stretch sweep needs at least one step and a nonempty range for several"));
    }
    let base = regular_ngon(3)?;
    let entries = (0..steps)
        .map(|k| {
            let t = if steps == 1 {
                t_min
            } else {
                t_min + (t_max - t_min) * k as f64 / (steps - 1) as f64
            };
            let report = census_polygon(&base.affine_stretch(t), cfg)?.report;
            Ok(StretchEntry { t, report })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StretchSweepResult { entries })
}

/// A random simple polygon star-shaped about the origin: the regular `n`-gon
/// with each vertex moved by up to `jitter` of the angular spacing and radius
/// scaled into `[1 - jitter, 1 + jitter]`. `jitter` must lie in `(0, 0.5)`.
pub fn random_star_polygon(n: usize, jitter: f64, rng: &mut impl Rng) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if !(jitter > 0.0 && jitter < 0.5) {
        return Err(Error::invalid("jitter must lie in (0, 0.5)"));
    }
    let spacing = TAU / n as f64;
    loop {
        let vertices: Vec<Point> = (0..n)
            .map(|k| {
                let angle = spacing * (k as f64 + rng.gen_range(-jitter..jitter));
                let radius = 1.0 + rng.gen_range(-jitter..jitter);
                Point::from_polar(radius, angle)
            })
            .collect();
        let Ok(p) = Polygon::new(vertices) else { continue };
        if is_simple(&p) && p.interior_angles().iter().all(|a| (std::f64::consts::PI - a).abs() > 1e-3) {
            return Ok(p);
        }
    }
}

fn is_simple(p: &Polygon) -> bool {
    let n = p.len();
    let crosses = |(a, b): (Point, Point), (c, d): (Point, Point)| {
        let o = |p: Point, q: Point, r: Point| (q - p).cross(r - p);
        o(a, b, c) * o(a, b, d) < 0.0 && o(c, d, a) * o(c, d, b) < 0.0
    };
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if crosses(p.side(i), p.side(j)) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub n: usize,
    pub regular: RegionReport,
    pub samples: Vec<RegionReport>,
}

impl RegularityReport {
    pub fn max_sampled(&self) -> usize {
        self.samples.iter().map(|r| r.total_contracting()).max().unwrap_or(0)
    }

    /// Whether no sample exceeded the regular polygon's count.
    pub fn regular_is_max(&self) -> bool {
        self.max_sampled() <= self.regular.total_contracting()
    }
}

/// Census of `trials` random star-shaped perturbations of the regular
/// `n`-gon alongside the regular one.
pub fn regularity_comparison(n: usize, trials: usize, seed: u64, cfg: &CensusConfig) -> Result<RegularityReport> {
    if trials == 0 {
        return Err(Error::invalid("regularity comparison needs at least one trial"));
    }
    let regular = census_polygon(&regular_ngon(n)?, cfg)?.report;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polygons = (0..trials)
        .map(|_| random_star_polygon(n, 0.25, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let samples = polygons
        .iter()
        .map(|p| Ok(census_polygon(p, cfg)?.report))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularityReport { n, regular, samples })
}
