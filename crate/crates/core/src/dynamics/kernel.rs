//! Allocation-light evaluation of `log s` for field sampling.
//!
//! The orbit is computed in coordinates centered at `m` (the map commutes
//! with translations), which keeps the arithmetic well scaled when `m` is
//! far from the polygon.

use crate::geometry::{MapConfig, Point, Polygon};

/// Residual above which a field sample is treated as numerically broken.
pub const KERNEL_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Outcome of one field sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleSample {
    /// `log s` of a completed, consistent `n`-step orbit.
    Finite(f64),
    /// `m` within the collinearity guard of a sideline of some iterate.
    BlowUp,
    /// Orbit completed but the vertexwise ratios disagree.
    Inconsistent,
}

impl ScaleSample {
    /// `log s`, with degenerate samples mapped to `+inf` (they sit on the
    /// blow-up set, where `s` is unbounded).
    pub fn value(self) -> f64 {
        match self {
            ScaleSample::Finite(v) => v,
            ScaleSample::BlowUp | ScaleSample::Inconsistent => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScaleKernel {
    vertices: Vec<Point>,
    tolerance: f64,
}

impl ScaleKernel {
    pub fn new(p: &Polygon) -> Self {
        ScaleKernel {
            vertices: p.vertices().to_vec(),
            tolerance: MapConfig::default().collinearity_tolerance,
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn sample(&self, m: Point) -> ScaleSample {
        if !m.is_finite() {
            return ScaleSample::BlowUp;
        }
        let n = self.vertices.len();
        let start: Vec<Point> = self.vertices.iter().map(|&v| v - m).collect();
        let mut cur = start.clone();
        let mut next = vec![Point::ORIGIN; n];
        for _ in 0..n {
            for i in 0..n {
                let a = cur[i];
                let b = cur[(i + 1) % n];
                let aa = a.norm_sq();
                let bb = b.norm_sq();
                let cross = a.cross(b);
                let scale_sq = aa.max(bb).max((a - b).norm_sq());
                if cross.abs() <= self.tolerance * scale_sq {
                    return ScaleSample::BlowUp;
                }
                let d = 2.0 * cross;
                next[i] = Point::new((aa * b.y - bb * a.y) / d, (bb * a.x - aa * b.x) / d);
            }
            std::mem::swap(&mut cur, &mut next);
        }
        // Ratios z_i = cur_i / start_i as complex numbers.
        let mut s_sum = 0.0;
        let mut hx = 0.0;
        let mut hy = 0.0;
        let mut ratios = next;
        for i in 0..n {
            let a = start[i];
            let b = cur[i];
            let den = a.norm_sq();
            let z = Point::new((b.x * a.x + b.y * a.y) / den, (b.y * a.x - b.x * a.y) / den);
            let r = z.norm();
            s_sum += r;
            hx += z.x / r;
            hy += z.y / r;
            ratios[i] = z;
        }
        let s = s_sum / n as f64;
        let heading = hy.atan2(hx);
        let mean = Point::from_polar(s, heading);
        let residual = ratios
            .iter()
            .map(|z| z.distance(mean))
            .fold(0.0, f64::max)
            / s;
        if !(residual <= KERNEL_RESIDUAL_TOLERANCE) || !s.is_finite() || s <= 0.0 {
            return ScaleSample::Inconsistent;
        }
        ScaleSample::Finite(s.ln())
    }

    pub fn log_scale(&self, m: Point) -> f64 {
        self.sample(m).value()
    }
}
