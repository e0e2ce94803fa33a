//! Closed-form side-ratio and rotation-cosine formulas for triangles, and
//! their calibration against the orbit.
//!
//! The formulas are stated in terms of the areas of the sub-triangles
//! `ABM`, `BCM`, `ACM`, without saying which normalization of "area" is
//! meant. Evaluated with ordinary (half-determinant) areas the ratio formula
//! overshoots the orbit scale by a constant factor and the cosine formula
//! undershoots by one; [`calibrate_closed_forms`] fits those factors from a
//! fixed candidate set instead of assuming them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::similarity::extract_similarity;
use crate::error::{Error, Result};
use crate::geometry::{relative_twice_area, Point, Polygon};

/// Candidate area-normalization factors.
pub const CONVENTION_CANDIDATES: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

/// A calibrated formula must reproduce the orbit to this accuracy
/// (relative for the ratio, absolute for the cosine).
pub const CALIBRATION_TOLERANCE: f64 = 1e-9;

const POSITION_TOLERANCE: f64 = 1e-12;

struct TriangleTerms {
    /// `|BC|, |AC|, |AB|`
    l: [f64; 3],
    /// `|AM|, |BM|, |CM|`
    m: [f64; 3],
    /// Areas of `ABM, BCM, CAM`, signed so that all three are positive when
    /// `M` is inside the triangle.
    oriented: [f64; 3],
}

fn terms(t: &Polygon, m: Point) -> Result<TriangleTerms> {
    if t.len() != 3 {
        return Err(Error::invalid("closed forms apply to triangles only"));
    }
    let (a, b, c) = (t.vertex(0), t.vertex(1), t.vertex(2));
    for (p, q) in [(a, b), (b, c), (c, a)] {
        if relative_twice_area(p, q, m).abs() <= POSITION_TOLERANCE {
            return Err(Error::DegeneratePosition);
        }
    }
    let orientation = t.signed_area().signum();
    let area = |p: Point, q: Point| 0.5 * (q - p).cross(m - p) * orientation;
    Ok(TriangleTerms {
        l: [b.distance(c), a.distance(c), a.distance(b)],
        m: [a.distance(m), b.distance(m), c.distance(m)],
        oriented: [area(a, b), area(b, c), area(c, a)],
    })
}

/// `l_a l_b l_c m_a m_b m_c / (8 A(ABM) A(BCM) A(ACM))` with ordinary
/// unsigned areas.
pub fn triangle_ratio_closed_form(t: &Polygon, m: Point) -> Result<f64> {
    let k = terms(t, m)?;
    let [la, lb, lc] = k.l;
    let [ma, mb, mc] = k.m;
    let [abm, bcm, cam] = k.oriented.map(f64::abs);
    Ok(la * lb * lc * ma * mb * mc / (8.0 * abm * bcm * cam))
}

/// `[m_c^2 (m_a^2 + m_b^2) A(ABM) + m_b^2 (m_a^2 + m_c^2) A(ACM)
///   + m_a^2 (m_b^2 + m_c^2) A(BCM)] / (l_a l_b l_c m_a m_b m_c)`
/// with ordinary areas oriented as `ABM`, `BCM`, `CAM` (all positive for
/// `M` inside the triangle).
pub fn triangle_cos_alpha_closed_form(t: &Polygon, m: Point) -> Result<f64> {
    let k = terms(t, m)?;
    Ok(cos_numerator(&k) / denominator(&k))
}

fn cos_numerator(k: &TriangleTerms) -> f64 {
    let [ma, mb, mc] = k.m;
    let [abm, bcm, cam] = k.oriented;
    let (ma2, mb2, mc2) = (ma * ma, mb * mb, mc * mc);
    mc2 * (ma2 + mb2) * abm + mb2 * (ma2 + mc2) * cam + ma2 * (mb2 + mc2) * bcm
}

fn denominator(k: &TriangleTerms) -> f64 {
    k.l.iter().product::<f64>() * k.m.iter().product::<f64>()
}

/// Sign of the product of the three oriented sub-areas: `+1` inside the
/// triangle and in the three vertex wedges, `-1` in the three side wedges.
fn sub_area_sign(t: &Polygon, m: Point) -> Result<f64> {
    let k = terms(t, m)?;
    Ok(k.oriented.iter().product::<f64>().signum())
}

/// Fit of one candidate factor.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateFit {
    pub factor: f64,
    /// Ratio: max relative error of `raw / factor` against the orbit scale.
    pub ratio_error: f64,
    /// Cosine: max absolute error of `factor * raw` against `cos(alpha)`.
    pub cos_direct_error: f64,
    /// Cosine: max error of `|factor * raw|` against `|cos(alpha)|`.
    pub cos_magnitude_error: f64,
    /// Cosine: max error of `-sign(ABM * BCM * CAM) * factor * raw`.
    pub cos_signed_error: f64,
}

/// One row of calibration evidence.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationRow {
    pub triangle: Polygon,
    pub m: Point,
    pub orbit_s: f64,
    pub orbit_cos_alpha: f64,
    pub raw_ratio: f64,
    pub raw_cos: f64,
    pub sub_area_sign: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormCalibration {
    /// Calibrated ratio is `raw / ratio_divisor`.
    pub ratio_divisor: f64,
    pub ratio_max_error: f64,
    /// Calibrated cosine magnitude is `|cos_factor * raw|`.
    pub cos_factor: f64,
    /// Whether `cos_factor * raw` matches `cos(alpha)` without any sign rule.
    pub cos_direct_fit: bool,
    /// Whether `-sign(ABM * BCM * CAM) * cos_factor * raw` matches `cos(alpha)`.
    pub cos_sign_rule_fit: bool,
    pub cos_max_error: f64,
    pub candidates: Vec<CandidateFit>,
    pub rows: Vec<CalibrationRow>,
}

impl ClosedFormCalibration {
    pub fn calibrated_ratio(&self, t: &Polygon, m: Point) -> Result<f64> {
        Ok(triangle_ratio_closed_form(t, m)? / self.ratio_divisor)
    }

    /// Calibrated cosine; applies the sub-area sign rule when it was
    /// confirmed and no direct fit exists.
    pub fn calibrated_cos_alpha(&self, t: &Polygon, m: Point) -> Result<f64> {
        let raw = triangle_cos_alpha_closed_form(t, m)? * self.cos_factor;
        if self.cos_direct_fit || !self.cos_sign_rule_fit {
            Ok(raw)
        } else {
            Ok(-sub_area_sign(t, m)? * raw)
        }
    }
}

/// Random scalene triangle with a center `m` comfortably off its sidelines
/// and a well-conditioned orbit.
pub fn random_scalene_instance(rng: &mut impl Rng) -> (Polygon, Point) {
    loop {
        let pts: Vec<Point> = (0..3)
            .map(|_| Point::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect();
        let Ok(t) = Polygon::new(pts) else { continue };
        let (a, b, c) = (t.vertex(0), t.vertex(1), t.vertex(2));
        if relative_twice_area(a, b, c).abs() < 0.2 {
            continue;
        }
        let mut l = [a.distance(b), b.distance(c), c.distance(a)];
        l.sort_by(f64::total_cmp);
        if l[1] - l[0] < 0.05 * l[2] || l[2] - l[1] < 0.05 * l[2] {
            continue;
        }
        let m = Point::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        let clear = [(a, b), (b, c), (c, a)]
            .iter()
            .all(|&(p, q)| relative_twice_area(p, q, m).abs() > 0.02);
        if clear && extract_similarity(&t, m).is_ok() {
            return (t, m);
        }
    }
}

/// Fits the area-normalization factors of both formulas on `trials` random
/// scalene instances. Fails with [`Error::NoConventionFits`] when no
/// candidate reproduces the orbit scale.
pub fn calibrate_closed_forms(trials: usize, seed: u64) -> Result<ClosedFormCalibration> {
    if trials == 0 {
        return Err(Error::invalid("calibration needs at least one instance"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (t, m) = random_scalene_instance(&mut rng);
        let sp = extract_similarity(&t, m)?;
        rows.push(CalibrationRow {
            raw_ratio: triangle_ratio_closed_form(&t, m)?,
            raw_cos: triangle_cos_alpha_closed_form(&t, m)?,
            sub_area_sign: sub_area_sign(&t, m)?,
            orbit_s: sp.s,
            orbit_cos_alpha: sp.alpha.cos(),
            triangle: t,
            m,
        });
    }

    let max_over = |f: &dyn Fn(&CalibrationRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let candidates: Vec<CandidateFit> = CONVENTION_CANDIDATES
        .iter()
        .map(|&factor| CandidateFit {
            factor,
            ratio_error: max_over(&|r| (r.raw_ratio / factor - r.orbit_s).abs() / r.orbit_s),
            cos_direct_error: max_over(&|r| (factor * r.raw_cos - r.orbit_cos_alpha).abs()),
            cos_magnitude_error: max_over(&|r| {
                ((factor * r.raw_cos).abs() - r.orbit_cos_alpha.abs()).abs()
            }),
            cos_signed_error: max_over(&|r| {
                (-r.sub_area_sign * factor * r.raw_cos - r.orbit_cos_alpha).abs()
            }),
        })
        .collect();

    let best_ratio = candidates
        .iter()
        .min_by(|a, b| a.ratio_error.total_cmp(&b.ratio_error))
        .expect("candidate set is non-empty");
    if best_ratio.ratio_error > CALIBRATION_TOLERANCE {
        return Err(Error::NoConventionFits {
            best_error: best_ratio.ratio_error,
        });
    }
    let best_cos = candidates
        .iter()
        .min_by(|a, b| {
            let ea = a.cos_direct_error.min(a.cos_signed_error).min(a.cos_magnitude_error);
            let eb = b.cos_direct_error.min(b.cos_signed_error).min(b.cos_magnitude_error);
            ea.total_cmp(&eb)
        })
        .expect("candidate set is non-empty");
    let cos_direct_fit = best_cos.cos_direct_error <= CALIBRATION_TOLERANCE;
    let cos_sign_rule_fit = best_cos.cos_signed_error <= CALIBRATION_TOLERANCE;
    let cos_max_error = if cos_direct_fit {
        best_cos.cos_direct_error
    } else if cos_sign_rule_fit {
        best_cos.cos_signed_error
    } else {
        best_cos.cos_magnitude_error
    };

    Ok(ClosedFormCalibration {
        ratio_divisor: best_ratio.factor,
        ratio_max_error: best_ratio.ratio_error,
        cos_factor: best_cos.factor,
        cos_direct_fit,
        cos_sign_rule_fit,
        cos_max_error,
        candidates: candidates.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_ngon;

    #[test]
    fn equilateral_centroid_raw_values() {
        let t = regular_ngon(3).unwrap();
        let r = triangle_ratio_closed_form(&t, Point::ORIGIN).unwrap();
        assert!((r - 8.0).abs() < 1e-12, "{r}");
        let c = triangle_cos_alpha_closed_form(&t, Point::ORIGIN).unwrap();
        assert!((c - 0.5).abs() < 1e-12, "{c}");
    }

    #[test]
    fn orientation_does_not_matter() {
        let t = regular_ngon(3).unwrap();
        let cw = Polygon::new(t.vertices().iter().rev().copied().collect()).unwrap();
        let m = Point::new(0.3, 0.1);
        assert!(
            (triangle_cos_alpha_closed_form(&t, m).unwrap()
                - triangle_cos_alpha_closed_form(&cw, m).unwrap())
            .abs()
                < 1e-12
        );
    }

    #[test]
    fn sideline_center_is_degenerate() {
        let t = regular_ngon(3).unwrap();
        let on_side = t.vertex(0).midpoint(t.vertex(1));
        assert_eq!(triangle_ratio_closed_form(&t, on_side), Err(Error::DegeneratePosition));
        let q = regular_ngon(4).unwrap();
        assert!(triangle_ratio_closed_form(&q, Point::ORIGIN).is_err());
    }

    #[test]
    fn calibration_picks_doubled_area() {
        let cal = calibrate_closed_forms(100, 7).unwrap();
        assert_eq!(cal.ratio_divisor, 8.0);
        assert!(cal.ratio_max_error < 1e-9);
        assert_eq!(cal.cos_factor, 2.0);
        assert!(!cal.cos_direct_fit);
        assert!(cal.cos_sign_rule_fit);
        let t = regular_ngon(3).unwrap();
        let k1 = Point::new(1.0 + 3f64.sqrt(), 0.0);
        assert!((cal.calibrated_ratio(&t, k1).unwrap() - 1.0).abs() < 1e-12);
        assert!((cal.calibrated_cos_alpha(&t, k1).unwrap() - 1.0).abs() < 1e-12);
        assert!((cal.calibrated_cos_alpha(&t, Point::ORIGIN).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(calibrate_closed_forms(0, 1).is_err());
    }
}
