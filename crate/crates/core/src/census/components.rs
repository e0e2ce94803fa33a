//! Connected components of the sign field over both charts.
//!
//! Every uniform base cell is one node; every refined cell contributes one
//! node per leaf. Neighbors are joined with 4-connectivity when their signs
//! agree. Ambiguous leaves join nothing. The two charts are glued on the
//! annulus where they overlap. A small disk around `w = 0` is cut out of the
//! inverted chart and stands for the point at infinity: contracting
//! components reaching its rim are non-compact, and all expanding nodes on
//! the rim are joined through it. Without the cut, sectors that meet only at
//! infinity would merge in cells too coarse to separate them.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::field::{Cell, Chart, FieldGrid, Sign};
use crate::geometry::{Point, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionClass {
    /// Every cell lies inside the polygon.
    Interior,
    /// Bounded, not entirely inside the polygon.
    Compact,
    /// Reaches the point at infinity.
    NonCompact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub sign: Sign,
    /// `None` for expanding components and fragments.
    pub class: Option<RegionClass>,
    /// Unresolved sliver along a cut; not counted.
    pub fragment: bool,
    pub nodes: usize,
    /// Area of the part inside the plane chart's disk.
    pub plane_area: f64,
    /// Centroid of that part; `None` if the component lives only in the
    /// inverted chart.
    pub plane_centroid: Option<Point>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RegionCounts {
    pub interior: usize,
    pub noncompact: usize,
    pub compact: usize,
    pub expanding: usize,
}

impl RegionCounts {
    pub fn total_contracting(&self) -> usize {
        self.interior + self.noncompact + self.compact
    }
}

/// Geometry of the two-chart cover.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cover {
    /// Plane chart nodes count when their center has `|M| <= radius`.
    pub radius: f64,
    /// Inverted chart nodes with `|w| < hole` stand for the point at
    /// infinity and are left out.
    pub hole: f64,
    /// Live inverted nodes with `|w| < ring` are adjacent to infinity.
    pub ring: f64,
}

struct ChartNodes<'a> {
    grid: &'a FieldGrid,
    /// First node of each base cell.
    offsets: Vec<usize>,
    disk: f64,
    hole: f64,
}

impl<'a> ChartNodes<'a> {
    fn new(grid: &'a FieldGrid, start: usize, disk: f64, hole: f64) -> (Self, usize) {
        let side = grid.leaf_side();
        let mut next = start;
        let offsets = grid
            .cells
            .iter()
            .map(|c| {
                let o = next;
                next += match c {
                    Cell::Skipped => 0,
                    Cell::Uniform(_) => 1,
                    Cell::Refined(_) => side * side,
                };
                o
            })
            .collect();
        (ChartNodes { grid, offsets, disk, hole }, next)
    }

    /// Node, sign and chart center of the fine slot `(a, b)` of base cell
    /// `(i, j)`, if that slot is live in this view.
    fn slot(&self, i: usize, j: usize, a: usize, b: usize, coarse: bool) -> Option<(usize, Sign)> {
        let g = self.grid;
        let c = g.index(i, j);
        let (node, sign, center) = match &g.cells[c] {
            Cell::Skipped => return None,
            Cell::Uniform(s) => (self.offsets[c], *s, g.cell_center(i, j)),
            Cell::Refined(leaves) => {
                let side = g.leaf_side();
                let leaf = leaves[b * side + a];
                let sign = if coarse && leaf.level() == g.refine_depth {
                    Sign::Ambiguous
                } else {
                    leaf.sign()
                };
                (self.offsets[c] + b * side + a, sign, self.leaf_center(i, j, a, b))
            }
        };
        let r = center.norm();
        (sign != Sign::Ambiguous && r <= self.disk && r >= self.hole).then_some((node, sign))
    }

    fn leaf_center(&self, i: usize, j: usize, a: usize, b: usize) -> Point {
        let g = self.grid;
        let side = g.leaf_side() as f64;
        let r = g.resolution as f64;
        g.bounds.lerp(
            (i as f64 + (a as f64 + 0.5) / side) / r,
            (j as f64 + (b as f64 + 0.5) / side) / r,
        )
    }

    fn is_uniform(&self, i: usize, j: usize) -> bool {
        matches!(self.grid.cells[self.grid.index(i, j)], Cell::Uniform(_))
    }

    fn union_internal(&self, uf: &mut UnionFind<usize>, coarse: bool) {
        let g = self.grid;
        let r = g.resolution;
        let side = g.leaf_side();
        let join = |uf: &mut UnionFind<usize>, x: Option<(usize, Sign)>, y: Option<(usize, Sign)>| {
            if let (Some((u, su)), Some((v, sv))) = (x, y) {
                if su == sv {
                    uf.union(u, v);
                }
            }
        };
        for j in 0..r {
            for i in 0..r {
                let c = g.index(i, j);
                if matches!(g.cells[c], Cell::Skipped) {
                    continue;
                }
                if let Cell::Refined(_) = g.cells[c] {
                    for b in 0..side {
                        for a in 0..side {
                            let here = self.slot(i, j, a, b, coarse);
                            if a + 1 < side {
                                join(uf, here, self.slot(i, j, a + 1, b, coarse));
                            }
                            if b + 1 < side {
                                join(uf, here, self.slot(i, j, a, b + 1, coarse));
                            }
                        }
                    }
                }
                if i + 1 < r {
                    let single = self.is_uniform(i, j) && self.is_uniform(i + 1, j);
                    for k in 0..if single { 1 } else { side } {
                        join(uf, self.slot(i, j, side - 1, k, coarse), self.slot(i + 1, j, 0, k, coarse));
                    }
                }
                if j + 1 < r {
                    let single = self.is_uniform(i, j) && self.is_uniform(i, j + 1);
                    for k in 0..if single { 1 } else { side } {
                        join(uf, self.slot(i, j, k, side - 1, coarse), self.slot(i, j + 1, k, 0, coarse));
                    }
                }
            }
        }
    }

    /// Live node containing chart point `c`.
    fn node_at(&self, c: Point, coarse: bool) -> Option<(usize, Sign)> {
        let g = self.grid;
        let (i, j) = g.locate(c)?;
        let side = g.leaf_side();
        let (hx, hy) = g.cell_size();
        let o = g.bounds.lerp(i as f64 / g.resolution as f64, j as f64 / g.resolution as f64);
        let a = (((c.x - o.x) / hx * side as f64) as usize).min(side - 1);
        let b = (((c.y - o.y) / hy * side as f64) as usize).min(side - 1);
        self.slot(i, j, a, b, coarse)
    }
}

/// Calls `f(node, sign, chart center, plane area)` for every live node of the
/// chart, row-major over base cells and leaves.
fn for_each_live(chart: &ChartNodes<'_>, coarse: bool, mut f: impl FnMut(usize, Sign, Point, f64)) {
    let g = chart.grid;
    let side = g.leaf_side();
    let (hx, hy) = g.cell_size();
    for j in 0..g.resolution {
        for i in 0..g.resolution {
            let (slots, area) = match g.cells[g.index(i, j)] {
                Cell::Skipped => continue,
                Cell::Uniform(_) => (1, hx * hy),
                Cell::Refined(_) => (side, hx * hy / (side * side) as f64),
            };
            for b in 0..slots {
                for a in 0..slots {
                    if let Some((node, sign)) = chart.slot(i, j, a, b, coarse) {
                        let center = if slots == 1 { g.cell_center(i, j) } else { chart.leaf_center(i, j, a, b) };
                        f(node, sign, center, area);
                    }
                }
            }
        }
    }
}

/// Component label of every node plus the classified components.
#[derive(Debug, Clone)]
pub struct RegionMap {
    pub counts: RegionCounts,
    /// Components discarded as slivers along a cut.
    pub fragments: usize,
    pub components: Vec<Component>,
    node_component: Vec<u32>,
    plane_offsets: Vec<usize>,
    inverted_offsets: Vec<usize>,
}

const NO_COMPONENT: u32 = u32::MAX;

impl RegionMap {
    pub(crate) fn build(p: &Polygon, plane: &FieldGrid, inverted: &FieldGrid, cover: Cover, coarse: bool) -> RegionMap {
        debug_assert_eq!(plane.chart, Chart::Plane);
        debug_assert_eq!(inverted.chart, Chart::Inverted);
        let (pn, mid) = ChartNodes::new(plane, 0, cover.radius, 0.0);
        let (inv, total) = ChartNodes::new(inverted, mid, 2.0 / cover.radius, cover.hole);
        let infinity = total;
        let mut uf = UnionFind::new(total + 1);
        pn.union_internal(&mut uf, coarse);
        inv.union_internal(&mut uf, coarse);

        // Glue the charts where both are live, R/2 <= |M| <= R.
        for (from, to) in [(&pn, &inv), (&inv, &pn)] {
            for_each_live(from, coarse, |u, su, c, _| {
                if let Some((v, sv)) = to.node_at(c.inverted(), coarse) {
                    if su == sv {
                        uf.union(u, v);
                    }
                }
            });
        }

        for_each_live(&inv, coarse, |node, sign, center, _| {
            if sign == Sign::Expanding && center.norm() < cover.ring {
                uf.union(node, infinity);
            }
        });

        // Bands along the outer edge of each chart's disk, one base-cell
        // diagonal wide. The band along the infinity cut is the ring.
        let band = |g: &FieldGrid| {
            let (hx, hy) = g.cell_size();
            hx.hypot(hy)
        };
        let plane_band = cover.radius - band(plane);
        let inv_band = 2.0 / cover.radius - band(inverted);

        // Accumulate per root in a fixed order: plane then inverted, row-major.
        #[derive(Default)]
        struct Acc {
            sum: Point,
            noncompact: bool,
            outside: bool,
            /// Some node lies away from every cut.
            off_cut: bool,
        }
        let mut root_component = vec![NO_COMPONENT; total + 1];
        let mut node_component = vec![NO_COMPONENT; total];
        let mut components: Vec<Component> = Vec::new();
        let mut accs: Vec<Acc> = Vec::new();
        for chart in [&pn, &inv] {
            let kind = chart.grid.chart;
            for_each_live(chart, coarse, |node, sign, center, area| {
                let root = uf.find_mut(node);
                if root_component[root] == NO_COMPONENT {
                    root_component[root] = components.len() as u32;
                    components.push(Component {
                        sign,
                        class: None,
                        fragment: false,
                        nodes: 0,
                        plane_area: 0.0,
                        plane_centroid: None,
                    });
                    accs.push(Acc::default());
                }
                let k = root_component[root] as usize;
                node_component[node] = k as u32;
                components[k].nodes += 1;
                let acc = &mut accs[k];
                let r = center.norm();
                match kind {
                    Chart::Plane => {
                        components[k].plane_area += area;
                        acc.sum = acc.sum + center * area;
                        acc.off_cut |= r <= plane_band;
                        if sign == Sign::Contracting && !acc.outside && !p.contains(center) {
                            acc.outside = true;
                        }
                    }
                    Chart::Inverted => {
                        acc.outside = true;
                        acc.noncompact |= r < cover.ring;
                        acc.off_cut |= r >= cover.ring && r <= inv_band;
                    }
                }
            });
        }
        let mut counts = RegionCounts::default();
        let mut fragments = 0;
        for (comp, acc) in components.iter_mut().zip(&accs) {
            if comp.plane_area > 0.0 {
                comp.plane_centroid = Some(acc.sum * (1.0 / comp.plane_area));
            }
            // Slivers confined to the band along a cut are below resolution.
            comp.fragment = !acc.off_cut;
            if comp.fragment {
                fragments += 1;
                continue;
            }
            match comp.sign {
                Sign::Expanding => counts.expanding += 1,
                Sign::Contracting => {
                    let class = if acc.noncompact {
                        counts.noncompact += 1;
                        RegionClass::NonCompact
                    } else if !acc.outside {
                        counts.interior += 1;
                        RegionClass::Interior
                    } else {
                        counts.compact += 1;
                        RegionClass::Compact
                    };
                    comp.class = Some(class);
                }
                Sign::Ambiguous => unreachable!("ambiguous nodes are never live"),
            }
        }
        RegionMap {
            counts,
            fragments,
            components,
            node_component,
            plane_offsets: pn.offsets,
            inverted_offsets: inv.offsets,
        }
    }

    /// Component containing the plane point `m`, looked up in the plane chart
    /// when `|m| <= radius` and in the inverted chart otherwise.
    pub fn component_at(&self, plane: &FieldGrid, inverted: &FieldGrid, radius: f64, m: Point) -> Option<&Component> {
        let (grid, offsets, c) = if m.norm() <= radius {
            (plane, &self.plane_offsets, m)
        } else {
            (inverted, &self.inverted_offsets, m.inverted())
        };
        let (i, j) = grid.locate(c)?;
        let idx = grid.index(i, j);
        let node = match &grid.cells[idx] {
            Cell::Skipped => return None,
            Cell::Uniform(_) => offsets[idx],
            Cell::Refined(_) => {
                let side = grid.leaf_side();
                let (hx, hy) = grid.cell_size();
                let o = grid.bounds.lerp(i as f64 / grid.resolution as f64, j as f64 / grid.resolution as f64);
                let a = (((c.x - o.x) / hx * side as f64) as usize).min(side - 1);
                let b = (((c.y - o.y) / hy * side as f64) as usize).min(side - 1);
                offsets[idx] + b * side + a
            }
        };
        let k = self.node_component[node];
        (k != NO_COMPONENT).then(|| &self.components[k as usize])
    }
}
