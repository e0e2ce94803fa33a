use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};
use std::fmt::Write;

use super::{close_svg, num, open_svg, path_data, RenderSpec, Viewport};
use crate::census::{Cell, Chart, FieldGrid, Sign};
use crate::geometry::{Point, Polygon, Rect};
use crate::loci::Polyline;

/// Line work drawn over a sign map, all in plane coordinates.
#[derive(Debug, Clone, Default)]
pub struct Overlays {
    /// `s = 1` contours, drawn solid.
    pub contours: Vec<Polyline>,
    /// Directions of `alpha = 0` lines through the origin, drawn dashed.
    pub alpha_lines: Vec<f64>,
    pub polygon: Option<Polygon>,
}

/// An axis-aligned block of constant sign, in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignRun {
    pub bounds: Rect,
    pub sign: Sign,
}

/// `(first column, end column, sign)` runs along one raster row.
type RowRuns = Vec<(usize, usize, Sign)>;

fn row_runs(row: &[Option<Sign>]) -> RowRuns {
    let mut runs: RowRuns = Vec::new();
    for (k, s) in row.iter().enumerate() {
        let Some(s) = *s else { continue };
        match runs.last_mut() {
            Some(last) if last.1 == k && last.2 == s => last.1 += 1,
            _ => runs.push((k, k + 1, s)),
        }
    }
    runs
}

/// Merges runs of consecutive identical rows into blocks
/// `(first row, end row, first column, end column, sign)`.
fn merge_rows(rows: impl Iterator<Item = (usize, RowRuns)>) -> Vec<(usize, usize, usize, usize, Sign)> {
    let mut blocks = Vec::new();
    let mut open: Option<(usize, usize, RowRuns)> = None;
    let mut at = 0;
    for (height, runs) in rows {
        match &mut open {
            Some((_, end, prev)) if *prev == runs => *end += height,
            _ => {
                if let Some((r0, r1, prev)) = open.take() {
                    blocks.extend(prev.into_iter().map(|(c0, c1, s)| (r0, r1, c0, c1, s)));
                }
                open = Some((at, at + height, runs));
            }
        }
        at += height;
    }
    if let Some((r0, r1, prev)) = open {
        blocks.extend(prev.into_iter().map(|(c0, c1, s)| (r0, r1, c0, c1, s)));
    }
    blocks
}

/// The grid's leaf-level signs as maximal horizontal runs, with identical
/// consecutive rows merged. Skipped cells are left out.
pub fn sign_runs(grid: &FieldGrid) -> Vec<SignRun> {
    let res = grid.resolution;
    let side = grid.leaf_side();
    let rows = (0..res).flat_map(move |j| {
        let cells = &grid.cells[j * res..(j + 1) * res];
        let refined = cells.iter().any(|c| matches!(c, Cell::Refined(_)));
        let sub_rows = if refined { side } else { 1 };
        let height = if refined { 1 } else { side };
        (0..sub_rows).map(move |b| {
            let mut row = Vec::with_capacity(res * side);
            for c in cells {
                match c {
                    Cell::Skipped => row.extend(std::iter::repeat_n(None, side)),
                    Cell::Uniform(s) => row.extend(std::iter::repeat_n(Some(*s), side)),
                    Cell::Refined(leaves) => {
                        row.extend(leaves[b * side..(b + 1) * side].iter().map(|l| Some(l.sign())))
                    }
                }
            }
            (height, row_runs(&row))
        })
    });
    let units = (res * side) as f64;
    let b = grid.bounds;
    merge_rows(rows)
        .into_iter()
        .map(|(r0, r1, c0, c1, sign)| {
            let lo = b.lerp(c0 as f64 / units, r0 as f64 / units);
            let hi = b.lerp(c1 as f64 / units, r1 as f64 / units);
            SignRun {
                bounds: Rect { x0: lo.x, y0: lo.y, x1: hi.x, y1: hi.y },
                sign,
            }
        })
        .collect()
}

fn sign_color(spec: &RenderSpec, s: Sign) -> &str {
    match s {
        Sign::Contracting => &spec.palette.contracting,
        Sign::Expanding => &spec.palette.expanding,
        Sign::Ambiguous => &spec.palette.ambiguous,
    }
}

/// Writes blocks grouped by sign, one `<g>` per sign.
fn write_blocks(out: &mut String, spec: &RenderSpec, blocks: &[(Sign, (f64, f64, f64, f64))]) {
    for sign in [Sign::Contracting, Sign::Expanding, Sign::Ambiguous] {
        let mine: Vec<_> = blocks.iter().filter(|(s, _)| *s == sign).collect();
        if mine.is_empty() {
            continue;
        }
        let class = match sign {
            Sign::Contracting => "contracting",
            Sign::Expanding => "expanding",
            Sign::Ambiguous => "ambiguous",
        };
        writeln!(out, r#"<g class="{class}" fill="{}" shape-rendering="crispEdges">"#, sign_color(spec, sign)).unwrap();
        for (_, (x, y, w, h)) in mine {
            writeln!(out, r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#, num(*x), num(*y), num(*w), num(*h)).unwrap();
        }
        out.push_str("</g>\n");
    }
}

fn write_locus_paths(out: &mut String, spec: &RenderSpec, class: &str, dashed: bool, paths: &[String]) {
    if paths.is_empty() {
        return;
    }
    let dash = if dashed {
        format!(r#" stroke-dasharray="{} {}""#, num(4.0 * spec.locus_width), num(3.0 * spec.locus_width))
    } else {
        String::new()
    };
    writeln!(
        out,
        r#"<g class="{class}" fill="none" stroke="{}" stroke-width="{}"{dash} clip-path="url(#frame)">"#,
        spec.palette.locus,
        num(spec.locus_width)
    )
    .unwrap();
    for d in paths {
        writeln!(out, r#"<path d="{d}"/>"#).unwrap();
    }
    out.push_str("</g>\n");
}

fn write_polygon(out: &mut String, spec: &RenderSpec, d: String) {
    writeln!(
        out,
        r#"<path class="polygon" d="{d}" fill="none" stroke="{}" stroke-width="{}" clip-path="url(#frame)"/>"#,
        spec.palette.polygon,
        num(spec.stroke_width)
    )
    .unwrap();
}

fn write_clip(out: &mut String, inner: &str) {
    writeln!(out, r#"<defs><clipPath id="frame">{inner}</clipPath></defs>"#).unwrap();
}

/// Sign map of one chart with contracting cells green and expanding cells
/// red. Overlays are mapped into the grid's chart.
pub fn render_region_map(grid: &FieldGrid, overlays: &Overlays, spec: &RenderSpec) -> String {
    let vp = Viewport::fit(grid.bounds, spec);
    let mut out = open_svg(spec);
    let (fx, fy, fw, fh) = vp.rect(grid.bounds);
    write_clip(&mut out, &format!(r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#, num(fx), num(fy), num(fw), num(fh)));
    let blocks: Vec<_> = sign_runs(grid).into_iter().map(|r| (r.sign, vp.rect(r.bounds))).collect();
    write_blocks(&mut out, spec, &blocks);

    let to_chart = |p: Point| match grid.chart {
        Chart::Plane => p,
        Chart::Inverted => p.inverted(),
    };
    if let Some(poly) = &overlays.polygon {
        let pts: Vec<Point> = match grid.chart {
            Chart::Plane => poly.vertices().to_vec(),
            Chart::Inverted => subdivide(poly, 32).into_iter().map(to_chart).collect(),
        };
        write_polygon(&mut out, spec, path_data(&vp, &pts, true));
    }
    let reach = grid.bounds.width().hypot(grid.bounds.height());
    let lines: Vec<String> = overlays
        .alpha_lines
        .iter()
        .map(|&t| {
            let u = Point::from_polar(reach, t);
            path_data(&vp, &[-u, u], false)
        })
        .collect();
    write_locus_paths(&mut out, spec, "alpha-zero", true, &lines);
    let contours: Vec<String> = overlays
        .contours
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            let pts: Vec<Point> = c.iter().map(|&p| to_chart(p)).collect();
            path_data(&vp, &pts, false)
        })
        .collect();
    write_locus_paths(&mut out, spec, "locus", false, &contours);
    close_svg(out)
}

/// Disk radius of a plane point at distance `r` from the origin: the origin
/// goes to the rim and infinity to the center.
pub fn hemisphere_radius(r: f64) -> f64 {
    FRAC_2_PI * (1.0 / r).atan()
}

/// Plane point shown at disk position `q`. The center maps to infinity.
pub fn hemisphere_to_plane(q: Point) -> Point {
    let rho = q.norm();
    if rho == 0.0 {
        return Point::new(f64::INFINITY, f64::INFINITY);
    }
    q * ((FRAC_PI_2 * rho).tan().recip() / rho)
}

/// Inverted-chart coordinate `w = M / |M|^2` of the point shown at `q`.
fn hemisphere_to_inverted(q: Point) -> Point {
    let rho = q.norm();
    if rho == 0.0 {
        return Point::ORIGIN;
    }
    q * ((FRAC_PI_2 * rho).tan() / rho)
}

fn hemisphere_sign(plane: &FieldGrid, inverted: &FieldGrid, q: Point) -> Option<Sign> {
    let m = hemisphere_to_plane(q);
    if m.is_finite() {
        if let Some(s) = plane.sign_at(m) {
            return Some(s);
        }
    }
    inverted.sign_at(hemisphere_to_inverted(q))
}

/// `size x size` samples of the unit disk, row-major from the bottom-left.
/// Samples outside the disk, or where neither chart has data, are `None`.
/// The plane chart is preferred wherever it has data.
pub fn hemisphere_raster(plane: &FieldGrid, inverted: &FieldGrid, size: usize) -> Vec<Option<Sign>> {
    let step = 2.0 / size as f64;
    let mut out = Vec::with_capacity(size * size);
    for b in 0..size {
        for a in 0..size {
            let q = Point::new(-1.0 + (a as f64 + 0.5) * step, -1.0 + (b as f64 + 0.5) * step);
            out.push(if q.norm() < 1.0 { hemisphere_sign(plane, inverted, q) } else { None });
        }
    }
    out
}

fn subdivide(p: &Polygon, per_side: usize) -> Vec<Point> {
    p.sides()
        .flat_map(|(a, b)| (0..per_side).map(move |k| a + (b - a) * (k as f64 / per_side as f64)))
        .collect()
}

/// Both charts composed onto one disk through [`hemisphere_radius`].
/// Straight lines through the origin become diameters.
pub fn render_hemisphere(plane: &FieldGrid, inverted: &FieldGrid, overlays: &Overlays, spec: &RenderSpec) -> String {
    let size = spec.raster.max(2);
    let disk = Rect { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 };
    let vp = Viewport::fit(disk, spec);
    let raster = hemisphere_raster(plane, inverted, size);
    let rows = raster.chunks(size).map(|row| (1, row_runs(row)));
    let step = 2.0 / size as f64;
    let blocks: Vec<_> = merge_rows(rows)
        .into_iter()
        .map(|(r0, r1, c0, c1, sign)| {
            let r = Rect {
                x0: -1.0 + c0 as f64 * step,
                y0: -1.0 + r0 as f64 * step,
                x1: -1.0 + c1 as f64 * step,
                y1: -1.0 + r1 as f64 * step,
            };
            (sign, vp.rect(r))
        })
        .collect();

    let mut out = open_svg(spec);
    let (cx, cy) = vp.map(Point::ORIGIN);
    let radius = vp.scale();
    write_clip(&mut out, &format!(r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(cx), num(cy), num(radius)));
    write_blocks(&mut out, spec, &blocks);

    let to_disk = |m: Point| {
        let r = m.norm();
        if r == 0.0 {
            return None;
        }
        Some(m * (hemisphere_radius(r) / r))
    };
    if let Some(poly) = &overlays.polygon {
        let pts: Vec<Point> = subdivide(poly, 32).into_iter().filter_map(to_disk).collect();
        write_polygon(&mut out, spec, path_data(&vp, &pts, true));
    }
    let lines: Vec<String> = overlays
        .alpha_lines
        .iter()
        .map(|&t| {
            let u = Point::from_polar(1.0, t);
            path_data(&vp, &[-u, u], false)
        })
        .collect();
    write_locus_paths(&mut out, spec, "alpha-zero", true, &lines);
    let contours: Vec<String> = overlays
        .contours
        .iter()
        .map(|c| c.iter().filter_map(|&p| to_disk(p)).collect::<Vec<_>>())
        .filter(|c| c.len() >= 2)
        .map(|c| path_data(&vp, &c, false))
        .collect();
    write_locus_paths(&mut out, spec, "locus", false, &contours);
    writeln!(
        out,
        r#"<circle class="rim" cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        num(cx),
        num(cy),
        num(radius),
        spec.palette.locus,
        num(spec.stroke_width)
    )
    .unwrap();
    close_svg(out)
}
