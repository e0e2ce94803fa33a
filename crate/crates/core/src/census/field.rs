//! Adaptive sampling of the sign of `log s` over one chart.
//!
//! Each base cell is sampled at its four corners and its center. A cell whose
//! five samples share a sign takes that sign; otherwise it is split into four
//! and the children are tested the same way, down to `refine_depth`. Cells
//! still mixed at the finest level are ambiguous.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::ScaleKernel;
use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon, Rect};

pub const MIN_RESOLUTION: usize = 16;
pub const MAX_REFINE_DEPTH: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// Chart coordinates are `M` itself.
    Plane,
    /// Chart coordinates are `w = M / |M|^2`; `w = 0` is the point at infinity.
    Inverted,
}

impl Chart {
    pub fn to_plane(self, c: Point) -> Point {
        match self {
            Chart::Plane => c,
            Chart::Inverted => c.inverted(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
#[repr(u8)]
pub enum Sign {
    Contracting = 0,
    /// Includes `log s = 0` and every degenerate sample.
    Expanding = 1,
    Ambiguous = 2,
}

impl Sign {
    pub fn of(log_s: f64) -> Sign {
        if log_s < 0.0 {
            Sign::Contracting
        } else {
            Sign::Expanding
        }
    }

    fn from_bits(b: u8) -> Sign {
        match b & 3 {
            0 => Sign::Contracting,
            1 => Sign::Expanding,
            _ => Sign::Ambiguous,
        }
    }
}

/// A leaf of a refined cell: its sign and the level at which it resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leaf(u8);

impl Leaf {
    fn new(sign: Sign, level: u32) -> Leaf {
        Leaf(sign as u8 | (level as u8) << 2)
    }

    pub fn sign(self) -> Sign {
        Sign::from_bits(self.0)
    }

    pub fn level(self) -> u32 {
        u32::from(self.0 >> 2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Not sampled: outside the chart's disk of interest.
    Skipped,
    Uniform(Sign),
    /// Row-major `2^depth x 2^depth` raster of leaves.
    Refined(Box<[Leaf]>),
}

/// Sign of `log s` over a regular grid of base cells in one chart, with
/// per-cell adaptive refinement.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub chart: Chart,
    pub bounds: Rect,
    pub resolution: usize,
    pub refine_depth: u32,
    /// `log s` at each base cell center, row-major from `(x0, y0)`.
    /// `+inf` marks blow-up or inconsistent orbits; `NaN` marks skipped cells.
    pub values: Vec<f64>,
    pub cells: Vec<Cell>,
}

impl FieldGrid {
    pub fn cell_size(&self) -> (f64, f64) {
        (
            self.bounds.width() / self.resolution as f64,
            self.bounds.height() / self.resolution as f64,
        )
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.resolution + i
    }

    /// Chart coordinates of the center of base cell `(i, j)`.
    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        let r = self.resolution as f64;
        self.bounds.lerp((i as f64 + 0.5) / r, (j as f64 + 0.5) / r)
    }

    /// Base cell containing chart point `c`, if inside the bounds.
    pub fn locate(&self, c: Point) -> Option<(usize, usize)> {
        let r = self.resolution as f64;
        let u = (c.x - self.bounds.x0) / self.bounds.width() * r;
        let v = (c.y - self.bounds.y0) / self.bounds.height() * r;
        if !(u >= 0.0 && v >= 0.0 && u < r && v < r) {
            return None;
        }
        Some((u as usize, v as usize))
    }

    /// Leaves per side in a refined cell.
    pub fn leaf_side(&self) -> usize {
        1 << self.refine_depth
    }

    /// Largest refinement level reached in each base cell (0 when uniform or skipped).
    pub fn depth_map(&self) -> Vec<u8> {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Refined(leaves) => leaves.iter().map(|l| l.level() as u8).max().unwrap_or(0),
                _ => 0,
            })
            .collect()
    }

    /// Sign of the leaf containing chart point `c`. Skipped cells give `None`.
    pub fn sign_at(&self, c: Point) -> Option<Sign> {
        let (i, j) = self.locate(c)?;
        match &self.cells[self.index(i, j)] {
            Cell::Skipped => None,
            Cell::Uniform(s) => Some(*s),
            Cell::Refined(leaves) => {
                let side = self.leaf_side();
                let (hx, hy) = self.cell_size();
                let o = self.bounds.lerp(i as f64 / self.resolution as f64, j as f64 / self.resolution as f64);
                let a = (((c.x - o.x) / hx * side as f64) as usize).min(side - 1);
                let b = (((c.y - o.y) / hy * side as f64) as usize).min(side - 1);
                Some(leaves[b * side + a].sign())
            }
        }
    }

    pub fn count(&self, pred: impl Fn(&Cell) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(c)).count()
    }

    pub fn to_export(&self) -> FieldGridExport {
        FieldGridExport {
            chart: self.chart,
            bounds: self.bounds,
            resolution: self.resolution,
            refine_depth: self.refine_depth,
            values: self.values.iter().map(|v| v.is_finite().then_some(*v)).collect(),
            blow_up: self.values.iter().map(|v| *v == f64::INFINITY).collect(),
            signs: self
                .cells
                .iter()
                .map(|c| match c {
                    Cell::Skipped => None,
                    Cell::Uniform(s) => Some(*s),
                    Cell::Refined(_) => Some(Sign::Ambiguous),
                })
                .collect(),
            depth: self.depth_map(),
        }
    }
}

/// JSON form of a [`FieldGrid`]. Refined cells are reported as ambiguous at
/// base resolution; `depth` gives how far each was refined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGridExport {
    pub chart: Chart,
    pub bounds: Rect,
    pub resolution: usize,
    pub refine_depth: u32,
    /// `null` for skipped and blow-up cells.
    pub values: Vec<Option<f64>>,
    pub blow_up: Vec<bool>,
    pub signs: Vec<Option<Sign>>,
    pub depth: Vec<u8>,
}

/// Samples the whole chart rectangle.
pub fn sample_field(
    p: &Polygon,
    chart: Chart,
    bounds: Rect,
    resolution: usize,
    refine_depth: u32,
) -> Result<FieldGrid> {
    sample_field_masked(p, chart, bounds, resolution, refine_depth, None)
}

/// As [`sample_field`], skipping base cells that lie entirely outside the
/// chart disk `|c| <= mask` when a mask is given.
pub fn sample_field_masked(
    p: &Polygon,
    chart: Chart,
    bounds: Rect,
    resolution: usize,
    refine_depth: u32,
    mask: Option<f64>,
) -> Result<FieldGrid> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::invalid(format!("resolution must be at least {MIN_RESOLUTION}")));
    }
    if refine_depth > MAX_REFINE_DEPTH {
        return Err(Error::invalid(format!("refine depth must be at most {MAX_REFINE_DEPTH}")));
    }
    let kernel = ScaleKernel::new(p);
    let r = resolution;
    let (hx, hy) = (bounds.width() / r as f64, bounds.height() / r as f64);
    let half_diag = 0.5 * hx.hypot(hy);
    let corner = |i: usize, j: usize| bounds.lerp(i as f64 / r as f64, j as f64 / r as f64);
    let center = |i: usize, j: usize| bounds.lerp((i as f64 + 0.5) / r as f64, (j as f64 + 0.5) / r as f64);
    let wanted = |i: usize, j: usize| mask.is_none_or(|m| center(i, j).norm() <= m + half_diag);
    let eval = |c: Point| kernel.log_scale(chart.to_plane(c));

    let corners: Vec<f64> = (0..(r + 1) * (r + 1))
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % (r + 1), idx / (r + 1));
            let touches = [(i, j), (i.wrapping_sub(1), j), (i, j.wrapping_sub(1)), (i.wrapping_sub(1), j.wrapping_sub(1))]
                .iter()
                .any(|&(a, b)| a < r && b < r && wanted(a, b));
            if touches {
                eval(corner(i, j))
            } else {
                f64::NAN
            }
        })
        .collect();
    let at = |i: usize, j: usize| corners[j * (r + 1) + i];

    let sampled: Vec<(f64, Cell)> = (0..r * r)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % r, idx / r);
            if !wanted(i, j) {
                return (f64::NAN, Cell::Skipped);
            }
            let c = center(i, j);
            let mid = eval(c);
            let vals = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            let sign = Sign::of(mid);
            if vals.iter().all(|&v| Sign::of(v) == sign) {
                return (mid, Cell::Uniform(sign));
            }
            let side = 1usize << refine_depth;
            let mut leaves = vec![Leaf::new(Sign::Ambiguous, 0); side * side];
            let block = Block { ox: 0, oy: 0, span: side };
            let region = Region { origin: corner(i, j), w: hx, h: hy };
            let refiner = Refiner { eval: &eval, depth: refine_depth, side };
            refiner.refine(region, vals, mid, 0, block, &mut leaves);
            (mid, Cell::Refined(leaves.into_boxed_slice()))
        })
        .collect();
    let (values, cells) = sampled.into_iter().unzip();
    Ok(FieldGrid {
        chart,
        bounds,
        resolution,
        refine_depth,
        values,
        cells,
    })
}

#[derive(Clone, Copy)]
struct Region {
    origin: Point,
    w: f64,
    h: f64,
}

#[derive(Clone, Copy)]
struct Block {
    ox: usize,
    oy: usize,
    span: usize,
}

struct Refiner<'a, F: Fn(Point) -> f64> {
    eval: &'a F,
    depth: u32,
    side: usize,
}

impl<F: Fn(Point) -> f64> Refiner<'_, F> {
    /// `vals` are the corner samples in order bottom-left, bottom-right,
    /// top-right, top-left.
    fn refine(&self, reg: Region, vals: [f64; 4], mid: f64, level: u32, block: Block, leaves: &mut [Leaf]) {
        let sign = Sign::of(mid);
        let uniform = vals.iter().all(|&v| Sign::of(v) == sign);
        if uniform || level == self.depth {
            let leaf = Leaf::new(if uniform { sign } else { Sign::Ambiguous }, level);
            for y in block.oy..block.oy + block.span {
                leaves[y * self.side + block.ox..y * self.side + block.ox + block.span].fill(leaf);
            }
            return;
        }
        let (w, h) = (reg.w / 2.0, reg.h / 2.0);
        let o = reg.origin;
        let pt = |fx: f64, fy: f64| Point::new(o.x + fx * reg.w, o.y + fy * reg.h);
        let bottom = (self.eval)(pt(0.5, 0.0));
        let right = (self.eval)(pt(1.0, 0.5));
        let top = (self.eval)(pt(0.5, 1.0));
        let left = (self.eval)(pt(0.0, 0.5));
        let [bl, br, tr, tl] = vals;
        let half = block.span / 2;
        let children = [
            ((0.0, 0.0), [bl, bottom, mid, left], (0, 0)),
            ((0.5, 0.0), [bottom, br, right, mid], (half, 0)),
            ((0.5, 0.5), [mid, right, tr, top], (half, half)),
            ((0.0, 0.5), [left, mid, top, tl], (0, half)),
        ];
        for ((fx, fy), cv, (dx, dy)) in children {
            let child = Region { origin: pt(fx, fy), w, h };
            let cmid = (self.eval)(Point::new(child.origin.x + w / 2.0, child.origin.y + h / 2.0));
            let cb = Block { ox: block.ox + dx, oy: block.oy + dy, span: half };
            self.refine(child, cv, cmid, level + 1, cb, leaves);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_ngon;
    use crate::loci::eval_equilateral_sextic;

    #[test]
    fn equilateral_sign_at_two() {
        let p = regular_ngon(3).unwrap();
        let g = sample_field(&p, Chart::Plane, Rect::centered_square(4.0).unwrap(), 64, 2).unwrap();
        let m = Point::new(2.0, 0.0);
        // Sextic value -24 sits on the expanding side.
        assert_eq!(eval_equilateral_sextic(m), -24.0);
        assert_eq!(g.sign_at(m), Some(Sign::Expanding));
        assert!(ScaleKernel::new(&p).log_scale(m) > 0.0);
    }

    #[test]
    fn square_center_value() {
        let p = regular_ngon(4).unwrap();
        // Even resolution puts the origin on a corner; odd puts it at a center.
        let g = sample_field(&p, Chart::Plane, Rect::centered_square(2.0).unwrap(), 17, 1).unwrap();
        let v = g.values[g.index(8, 8)];
        assert!((v - 0.25f64.ln()).abs() < 1e-12);
        assert_eq!(g.cells[g.index(8, 8)], Cell::Uniform(Sign::Contracting));
    }

    #[test]
    fn mask_and_refinement() {
        let p = regular_ngon(4).unwrap();
        let g = sample_field_masked(&p, Chart::Plane, Rect::centered_square(4.0).unwrap(), 32, 3, Some(2.0)).unwrap();
        assert!(g.count(|c| matches!(c, Cell::Skipped)) > 0);
        assert!(g.count(|c| matches!(c, Cell::Refined(_))) > 0);
        assert!(g.depth_map().iter().all(|&d| d <= 3));
        assert_eq!(g.cells[g.index(0, 0)], Cell::Skipped);
    }

    #[test]
    fn inverted_origin_is_blow_up() {
        let p = regular_ngon(5).unwrap();
        let g = sample_field(&p, Chart::Inverted, Rect::centered_square(0.5).unwrap(), 17, 0).unwrap();
        assert_eq!(g.values[g.index(8, 8)], f64::INFINITY);
    }

    #[test]
    fn rejects_small_resolution() {
        let p = regular_ngon(4).unwrap();
        assert!(sample_field(&p, Chart::Plane, Rect::centered_square(1.0).unwrap(), 8, 0).is_err());
    }

    #[test]
    fn export_round_trips_through_json() {
        let p = regular_ngon(4).unwrap();
        let g = sample_field(&p, Chart::Plane, Rect::centered_square(2.0).unwrap(), 16, 1).unwrap();
        let e = g.to_export();
        let s = serde_json::to_string(&e).unwrap();
        let back: FieldGridExport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
