use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::extract_similarity;
use crate::error::{Error, Result};
use crate::geometry::{regular_ngon, Point};

/// Directions `k pi / n`, `k = 0 .. n - 1`, of the lines through the centroid
/// of the regular `n`-gon on which the rotation angle is expected to vanish.
pub fn alpha_zero_lines(n: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    Ok((0..n).map(|k| k as f64 * PI / n as f64).collect())
}

/// Measured rotation angles along one line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineResidual {
    pub k: usize,
    pub direction: f64,
    /// Samples that produced a certified similarity.
    pub samples: usize,
    /// Samples skipped near a sideline or with a failed orbit.
    pub skipped: usize,
    /// Largest `|alpha|` over samples outside the polygon.
    pub max_alpha_outside: f64,
    /// Largest distance from `alpha` to `{0, pi}` over all samples.
    pub max_alpha_mod_pi: f64,
    /// Number of samples inside the polygon whose angle sits at `pi`.
    pub inside_at_pi: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineVerification {
    pub n: usize,
    pub lines: Vec<LineResidual>,
}

impl LineVerification {
    pub fn max_alpha_outside(&self) -> f64 {
        self.lines.iter().map(|l| l.max_alpha_outside).fold(0.0, f64::max)
    }

    pub fn max_alpha_mod_pi(&self) -> f64 {
        self.lines.iter().map(|l| l.max_alpha_mod_pi).fold(0.0, f64::max)
    }
}

/// Samples per line and radial extent used by [`verify_alpha_zero_lines`].
#[derive(Debug, Clone, Copy)]
pub struct LineSampling {
    pub per_line: usize,
    pub radius: f64,
    /// Samples closer than this to a sideline are skipped.
    pub sideline_margin: f64,
}

impl Default for LineSampling {
    fn default() -> Self {
        LineSampling {
            per_line: 100,
            radius: 5.0,
            sideline_margin: 1e-3,
        }
    }
}

/// Extract `alpha` at evenly spread points on each line `k pi / n` of the
/// regular `n`-gon and report what was measured. Nothing is asserted.
pub fn verify_alpha_zero_lines(n: usize, sampling: LineSampling) -> Result<LineVerification> {
    let directions = alpha_zero_lines(n)?;
    if sampling.per_line == 0 || !(sampling.radius > 0.0) {
        return Err(Error::invalid("line sampling needs at least one point and a positive radius"));
    }
    let polygon = regular_ngon(n)?;
    let lines = directions
        .iter()
        .enumerate()
        .map(|(k, &direction)| {
            let unit = Point::from_polar(1.0, direction);
            let measured: Vec<Option<(bool, f64)>> = (0..sampling.per_line)
                .into_par_iter()
                .map(|j| {
                    // Offset by an irrational fraction to stay off vertices and the centroid.
                    let u = (j as f64 + 0.5 + 0.1 * std::f64::consts::SQRT_2) / sampling.per_line as f64;
                    let m = unit * (sampling.radius * (2.0 * u - 1.0));
                    if polygon.sideline_distance(m) < sampling.sideline_margin {
                        return None;
                    }
                    let sim = extract_similarity(&polygon, m).ok()?;
                    Some((polygon.contains(m), sim.alpha))
                })
                .collect();
            let mut r = LineResidual {
                k,
                direction,
                samples: 0,
                skipped: 0,
                max_alpha_outside: 0.0,
                max_alpha_mod_pi: 0.0,
                inside_at_pi: 0,
            };
            for sample in measured {
                let Some((inside, alpha)) = sample else {
                    r.skipped += 1;
                    continue;
                };
                r.samples += 1;
                let to_pi = PI - alpha.abs();
                r.max_alpha_mod_pi = r.max_alpha_mod_pi.max(alpha.abs().min(to_pi));
                if inside {
                    if to_pi < alpha.abs() {
                        r.inside_at_pi += 1;
                    }
                } else {
                    r.max_alpha_outside = r.max_alpha_outside.max(alpha.abs());
                }
            }
            r
        })
        .collect();
    Ok(LineVerification { n, lines })
}
