//! Named invariant suites behind `circmap verify`.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use circmap::census::{census, conjectured_counts, random_star_polygon, table1_counts};
use circmap::dynamics::{
    calibrate_closed_forms, descriptor_distance, detect_period, extract_similarity, iterate, shape_descriptor,
};
use circmap::geometry::{
    circumcenter, circumcenter_map, inverse_circumcenter_map, regular_ngon, relative_twice_area, MapConfig, Point,
};
use circmap::loci::{
    equilateral_fixed_points, eval_equilateral_alpha_cubic, eval_equilateral_sextic, eval_square_octic,
    verify_alpha_zero_lines, LineSampling, PointRole,
};
use circmap::Error;

use crate::format::sig17;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Region census of regular polygons against the reference table.
    Table1,
    /// Calibrated triangle closed forms and the equilateral/square loci.
    ClosedForms,
    /// Fixed points, set periods and intermediate shapes.
    Periodicity,
    /// Forward map against the three-point construction, and its inverse.
    Inverse,
    /// `alpha = 0` on the lines through the center.
    Lines,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub resolution: usize,
    pub refine: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    match suite {
        Suite::Table1 => table1(opts),
        Suite::ClosedForms => closed_forms(opts),
        Suite::Periodicity => periodicity(opts),
        Suite::Inverse => inverse(opts),
        Suite::Lines => lines(),
    }
}

fn table1(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    if opts.n_min < 3 || opts.n_max > 11 || opts.n_min > opts.n_max {
        return Err(CliError::input("table1 covers 3 <= n-min <= n-max <= 11"));
    }
    let mut checks = Vec::new();
    for n in opts.n_min..=opts.n_max {
        let report = census(n, opts.resolution, opts.refine)?;
        let want = table1_counts(n).expect("n within table range");
        let conjectured = conjectured_counts(n)?;
        let c = report.counts;
        let passed = report.stable && c == want && c.total_contracting() == conjectured;
        checks.push(Check::new(
            format!("table1 n={n}"),
            passed,
            format!(
                "got {}/{}/{} (+{} expanding), expected {}/{}/{}, conjectured total {conjectured}, stable {}",
                c.interior, c.noncompact, c.compact, c.expanding, want.interior, want.noncompact, want.compact, report.stable
            ),
        ));
    }
    Ok(checks)
}

fn closed_forms(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    match calibrate_closed_forms(100, opts.seed) {
        Ok(cal) => {
            checks.push(Check::new(
                "triangle side-ratio formula",
                cal.ratio_max_error < 1e-9,
                format!("divisor {}, max relative error {}", cal.ratio_divisor, sig17(cal.ratio_max_error)),
            ));
            checks.push(Check::new(
                "triangle rotation-cosine formula",
                cal.cos_direct_fit || cal.cos_sign_rule_fit,
                format!(
                    "factor {}, direct fit {}, sub-area sign rule fit {}, max error {}",
                    cal.cos_factor,
                    cal.cos_direct_fit,
                    cal.cos_sign_rule_fit,
                    sig17(cal.cos_max_error)
                ),
            ));
        }
        Err(Error::NoConventionFits { best_error }) => checks.push(Check::new(
            "triangle side-ratio formula",
            false,
            format!("no candidate constant fits; best relative error {}", sig17(best_error)),
        )),
        Err(e) => return Err(e.into()),
    }

    // Along the x-axis the sextic is 3x^2 (x-1)^2 (x^2-2x-2).
    let worst = [-2.5, -1.0, -0.3, 0.4, 1.7, 3.1]
        .iter()
        .map(|&x: &f64| {
            let factored = 3.0 * x * x * (x - 1.0).powi(2) * (x * x - 2.0 * x - 2.0);
            (eval_equilateral_sextic(Point::new(x, 0.0)) - factored).abs() / factored.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("sextic x-axis factorization", worst < 1e-12, format!("max gap {}", sig17(worst))));

    let roots = [3.0f64 / 5.0, 1.0, 5.0 / 3.0].map(|u| eval_square_octic(Point::new(u.sqrt(), 0.0)).abs());
    let worst = roots.iter().copied().fold(0.0, f64::max);
    checks.push(Check::new("octic x-axis roots", worst < 1e-12, format!("max |f| {}", sig17(worst))));

    let special = equilateral_fixed_points();
    let worst = special
        .with_role(PointRole::FixedPoint)
        .map(|k| eval_equilateral_sextic(k).abs().max(eval_equilateral_alpha_cubic(k).abs()))
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "fixed points on both equilateral loci",
        worst < 1e-12,
        format!("max |f| {}", sig17(worst)),
    ));
    Ok(checks)
}

fn periodicity(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let special = equilateral_fixed_points();
    let t = &special.polygon;
    for sp in special.points.iter().filter(|p| p.role == PointRole::FixedPoint) {
        let sim = extract_similarity(t, sp.point)?;
        let period = detect_period(t, sp.point, 6, 1e-9);
        let passed = (sim.s - 1.0).abs() < 1e-9 && sim.alpha.abs() < 1e-9 && period == Some(3);
        checks.push(Check::new(
            format!("fixed point {}", sp.label),
            passed,
            format!("s {}, alpha {}, period {period:?}", sig17(sim.s), sig17(sim.alpha)),
        ));
    }
    let period = detect_period(t, Point::ORIGIN, 6, 1e-9);
    checks.push(Check::new("centroid set-period", period == Some(2), format!("period {period:?}")));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 4..=6 {
        let p = regular_ngon(n)?;
        let (mut worst_same, mut worst_diff) = (0.0f64, f64::INFINITY);
        let mut trials = 0;
        while trials < 20 {
            let m = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            // Skip orbits where some iterate nearly passes through m.
            let orbit = iterate(&p, m, 2 * n);
            let clear = orbit.is_complete()
                && orbit
                    .iterates
                    .iter()
                    .all(|q| q.sides().all(|(a, b)| relative_twice_area(m, a, b).abs() > 0.01));
            if !clear {
                continue;
            }
            trials += 1;
            let shapes: Vec<_> = orbit.iterates.iter().map(shape_descriptor).collect();
            for i in 0..shapes.len() {
                for j in i + 1..shapes.len() {
                    let d = descriptor_distance(&shapes[i], &shapes[j]);
                    if (j - i) % n == 0 {
                        worst_same = worst_same.max(d);
                    } else {
                        worst_diff = worst_diff.min(d);
                    }
                }
            }
        }
        checks.push(Check::new(
            format!("intermediate shapes n={n}"),
            worst_same < 1e-6 && worst_diff > 0.01,
            format!("same class max {}, distinct classes min {}", sig17(worst_same), sig17(worst_diff)),
        ));
    }
    Ok(checks)
}

/// Reflection of `m` in the line through `a` and `b`.
fn reflect(m: Point, a: Point, b: Point) -> Point {
    let d = b - a;
    let foot = a + d * ((m - a).dot(d) / d.norm_sq());
    foot * 2.0 - m
}

fn inverse(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cfg = MapConfig::default();
    let (mut forward, mut round_trip, mut reflections) = (0.0f64, 0.0f64, 0.0f64);
    let mut pairs = 0;
    while pairs < 1000 {
        let n = rng.gen_range(3..=8);
        let p = random_star_polygon(n, 0.3, &mut rng)?;
        let m = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if p.sides().any(|(a, b)| relative_twice_area(m, a, b).abs() < 0.05) {
            continue;
        }
        let image = circumcenter_map(&p, m, &cfg)?;
        for (i, (a, b)) in p.sides().enumerate() {
            let oracle = circumcenter(m, a, b)?;
            let scale = oracle.norm().max(p.diameter());
            forward = forward.max(image.vertex(i).distance(oracle) / scale);
        }
        let back = inverse_circumcenter_map(&image, m)?;
        round_trip = round_trip.max(back.labeled_distance(&p) / p.diameter());
        for i in 0..n {
            let (a, b) = image.side(i);
            let scale = m.norm().max(image.diameter());
            reflections = reflections.max(back.vertex(i + 1).distance(reflect(m, a, b)) / scale);
        }
        pairs += 1;
    }
    Ok(vec![
        Check::new(
            "forward map vs three-point circumcenter",
            forward < 1e-12,
            format!("{pairs} pairs, max relative error {}", sig17(forward)),
        ),
        Check::new(
            "inverse after forward",
            round_trip < 1e-10,
            format!("max relative error {}", sig17(round_trip)),
        ),
        Check::new(
            "inverse vertices are sideline reflections",
            reflections < 1e-12,
            format!("max relative error {}", sig17(reflections)),
        ),
    ])
}

fn lines() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for n in 3..=6 {
        let v = verify_alpha_zero_lines(n, LineSampling::default())?;
        let samples: usize = v.lines.iter().map(|l| l.samples).sum();
        let outside = v.max_alpha_outside();
        let mod_pi = v.max_alpha_mod_pi();
        let detail = format!(
            "{samples} samples, max |alpha| outside {}, max |alpha| mod pi {}",
            sig17(outside),
            sig17(mod_pi)
        );
        // Beyond the square the lines are conjectural: report, do not gate.
        let passed = n >= 5 || (outside < 1e-6 && mod_pi < 1e-6);
        let name = if n >= 5 {
            format!("alpha=0 lines n={n} (evidence)")
        } else {
            format!("alpha=0 lines n={n}")
        };
        checks.push(Check::new(name, passed, detail));
    }
    Ok(checks)
}
