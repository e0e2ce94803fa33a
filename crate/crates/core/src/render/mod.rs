//! SVG figures: orbits, sign maps of a single chart, the compactified
//! hemisphere, and stretch-sweep strips.
//!
//! Output is plain SVG 1.1 text. Coordinates are printed with a fixed number
//! of decimals, so the same inputs always give the same bytes.

mod field;
mod orbit;
mod strip;

pub use field::{
    hemisphere_radius, hemisphere_raster, hemisphere_to_plane, render_hemisphere, render_region_map,
    sign_runs, Overlays, SignRun,
};
pub use orbit::render_orbit;
pub use strip::render_stretch_strip;

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureKind {
    Orbit,
    RegionMap,
    Hemisphere,
    StretchStrip,
}

/// Fill and stroke colors, as SVG color strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub background: String,
    pub contracting: String,
    pub expanding: String,
    pub ambiguous: String,
    /// `s = 1` contours and `alpha = 0` lines.
    pub locus: String,
    pub orbit: String,
    /// Every `n`-th iterate of an orbit.
    pub highlight: String,
    pub marker: String,
    pub polygon: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            background: "#ffffff".into(),
            contracting: "#4daf4a".into(),
            expanding: "#e41a1c".into(),
            ambiguous: "#bdbdbd".into(),
            locus: "#000000".into(),
            orbit: "#377eb8".into(),
            highlight: "#000000".into(),
            marker: "#ff7f00".into(),
            polygon: "#000000".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub kind: FigureKind,
    pub palette: Palette,
    /// Canvas size in px.
    pub width: u32,
    pub height: u32,
    /// Blank border in px.
    pub margin: f64,
    pub stroke_width: f64,
    pub highlight_width: f64,
    pub locus_width: f64,
    pub marker_radius: f64,
    /// Samples per axis when rasterizing the hemisphere.
    pub raster: usize,
}

impl RenderSpec {
    pub fn new(kind: FigureKind) -> Self {
        let (width, height) = match kind {
            FigureKind::StretchStrip => (720, 240),
            _ => (640, 640),
        };
        RenderSpec {
            kind,
            palette: Palette::default(),
            width,
            height,
            margin: 16.0,
            stroke_width: 1.0,
            highlight_width: 2.5,
            locus_width: 1.5,
            marker_radius: 3.0,
            raster: 480,
        }
    }
}

/// Fixed-precision coordinate; never prints `-0.000`.
pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Affine map from a world rectangle onto the canvas, preserving aspect
/// ratio, with `y` pointing up.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Viewport {
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Viewport {
    pub(crate) fn fit(world: Rect, spec: &RenderSpec) -> Viewport {
        let w = (f64::from(spec.width) - 2.0 * spec.margin).max(1.0);
        let h = (f64::from(spec.height) - 2.0 * spec.margin).max(1.0);
        let scale = (w / world.width()).min(h / world.height());
        let ox = spec.margin + 0.5 * (w - scale * world.width()) - scale * world.x0;
        let oy = spec.margin + 0.5 * (h - scale * world.height()) + scale * world.y1;
        Viewport { scale, ox, oy }
    }

    pub(crate) fn scale(&self) -> f64 {
        self.scale
    }

    pub(crate) fn map(&self, p: Point) -> (f64, f64) {
        (self.ox + self.scale * p.x, self.oy - self.scale * p.y)
    }

    /// Canvas rectangle `(x, y, w, h)` of a world rectangle.
    pub(crate) fn rect(&self, r: Rect) -> (f64, f64, f64, f64) {
        let (x, y) = self.map(Point::new(r.x0, r.y1));
        (x, y, self.scale * r.width(), self.scale * r.height())
    }
}

pub(crate) fn open_svg(spec: &RenderSpec) -> String {
    let mut out = String::new();
    let (w, h) = (spec.width.max(1), spec.height.max(1));
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}"/>"#, spec.palette.background).unwrap();
    out
}

pub(crate) fn close_svg(mut out: String) -> String {
    out.push_str("</svg>\n");
    out
}

/// `d` attribute for a polyline, closed with `Z` when asked. Non-finite
/// points are dropped.
pub(crate) fn path_data(vp: &Viewport, pts: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (k, &p) in pts.iter().filter(|p| p.is_finite()).enumerate() {
        let (x, y) = vp.map(p);
        let cmd = if k == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{} {}", num(x), num(y)).unwrap();
    }
    if closed {
        d.push('Z');
    }
    d
}

/// Smallest rectangle containing the points, padded so it is never empty.
pub(crate) fn bounding_rect(points: impl IntoIterator<Item = Point>) -> Rect {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points.into_iter().filter(|p| p.is_finite()) {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    if x0 > x1 {
        return Rect { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 };
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    Rect {
        x0: x0 - pad,
        y0: y0 - pad,
        x1: x1 + pad,
        y1: y1 + pad,
    }
}
