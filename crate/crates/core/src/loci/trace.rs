//! Marching squares over the sampled `log s` field, followed by a Newton
//! polish of every vertex onto `log s = 0`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dynamics::ScaleKernel;
use crate::geometry::{Point, Polygon, Rect};

/// Points whose polished `|s - 1|` is not below this are dropped.
pub const TRACE_ACCEPT_TOLERANCE: f64 = 1e-3;

const NEWTON_STEPS: usize = 12;

pub type Polyline = Vec<Point>;

/// Grid edge between two lattice corners: `(i, j, horizontal)` where the
/// edge starts at corner `(i, j)` and runs in `+x` (horizontal) or `+y`.
type EdgeKey = (usize, usize, bool);

/// Contours of `s = 1` for `p` inside `window`, sampled on a
/// `resolution x resolution` cell grid. Cells touching a blow-up sample are
/// skipped. Closed contours repeat their first point at the end.
pub fn trace_s1_locus(p: &Polygon, window: Rect, resolution: usize) -> Vec<Polyline> {
    if resolution == 0 {
        return Vec::new();
    }
    let kernel = ScaleKernel::new(p);
    let r = resolution;
    let corner = |i: usize, j: usize| window.lerp(i as f64 / r as f64, j as f64 / r as f64);
    let values: Vec<f64> = (0..(r + 1) * (r + 1))
        .into_par_iter()
        .map(|idx| kernel.log_scale(corner(idx % (r + 1), idx / (r + 1))))
        .collect();
    let f = |i: usize, j: usize| values[j * (r + 1) + i];

    let edge_point = |key: EdgeKey| {
        let (i, j, horizontal) = key;
        let (i1, j1) = if horizontal { (i + 1, j) } else { (i, j + 1) };
        let (f0, f1) = (f(i, j), f(i1, j1));
        let t = f0 / (f0 - f1);
        corner(i, j) + (corner(i1, j1) - corner(i, j)) * t
    };

    let mut segments: Vec<[EdgeKey; 2]> = Vec::new();
    for j in 0..r {
        for i in 0..r {
            let c = [f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)];
            if c.iter().any(|v| !v.is_finite()) {
                continue;
            }
            let neg = c.map(|v| v < 0.0);
            let code = neg.iter().enumerate().fold(0u8, |acc, (b, &n)| acc | (u8::from(n) << b));
            if code == 0 || code == 15 {
                continue;
            }
            // Edges in corner order: bottom, right, top, left.
            let e = [(i, j, true), (i + 1, j, false), (i, j + 1, true), (i, j, false)];
            let mut push = |a: usize, b: usize| segments.push([e[a], e[b]]);
            match code {
                1 | 14 => push(3, 0),
                2 | 13 => push(0, 1),
                4 | 11 => push(1, 2),
                8 | 7 => push(2, 3),
                3 | 12 => push(3, 1),
                6 | 9 => push(0, 2),
                5 | 10 => {
                    let center = kernel.log_scale(corner(i, j) + (corner(i + 1, j + 1) - corner(i, j)) * 0.5);
                    let center_neg = center < 0.0;
                    // Separate the corners that differ from the center.
                    if (code == 5) == center_neg {
                        push(3, 2);
                        push(0, 1);
                    } else {
                        push(3, 0);
                        push(1, 2);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let chains = chain_segments(&segments);
    let cell = (window.width() / r as f64).max(window.height() / r as f64);
    let polished: Vec<Vec<Option<Point>>> = chains
        .par_iter()
        .map(|chain| {
            chain
                .iter()
                .map(|&key| polish(&kernel, edge_point(key), cell))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    for (chain, points) in chains.iter().zip(polished) {
        let closed = chain.len() > 2 && chain.first() == chain.last();
        let mut current: Polyline = Vec::new();
        let mut pieces = Vec::new();
        for p in points {
            match p {
                Some(p) => current.push(p),
                None => {
                    if current.len() >= 2 {
                        pieces.push(std::mem::take(&mut current));
                    }
                    current.clear();
                }
            }
        }
        if current.len() >= 2 {
            pieces.push(current);
        }
        // A closed loop broken once rejoins across its seam.
        if closed && pieces.len() >= 2 {
            let first = pieces.remove(0);
            let last = pieces.last_mut().unwrap();
            last.extend(first.into_iter().skip(1));
        }
        out.extend(pieces);
    }
    out
}

/// Join segments sharing an edge into maximal chains. Closed chains end with
/// their first key.
fn chain_segments(segments: &[[EdgeKey; 2]]) -> Vec<Vec<EdgeKey>> {
    let mut at_edge: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, seg) in segments.iter().enumerate() {
        for key in seg {
            at_edge.entry(*key).or_default().push(s);
        }
    }
    let other = |s: usize, key: EdgeKey| if segments[s][0] == key { segments[s][1] } else { segments[s][0] };
    let next_segment = |key: EdgeKey, from: usize, used: &[bool]| {
        at_edge[&key].iter().copied().find(|&t| t != from && !used[t])
    };

    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let [a, b] = segments[start];
        let mut forward = vec![a, b];
        let (mut key, mut seg) = (b, start);
        while let Some(t) = next_segment(key, seg, &used) {
            used[t] = true;
            key = other(t, key);
            seg = t;
            forward.push(key);
        }
        if forward.last() != Some(&a) {
            let mut backward = Vec::new();
            let (mut key, mut seg) = (a, start);
            while let Some(t) = next_segment(key, seg, &used) {
                used[t] = true;
                key = other(t, key);
                seg = t;
                backward.push(key);
            }
            backward.reverse();
            backward.extend(forward);
            forward = backward;
        }
        chains.push(forward);
    }
    chains
}

/// Newton iteration on `log s` along its central-difference gradient, each
/// step capped at one cell. Returns `None` if the result misses `s = 1`.
fn polish(kernel: &ScaleKernel, start: Point, cell: f64) -> Option<Point> {
    let mut x = start;
    let h = 1e-7 * cell.max(f64::EPSILON);
    for _ in 0..NEWTON_STEPS {
        let v = kernel.log_scale(x);
        if !v.is_finite() {
            return None;
        }
        if v.abs() < 1e-13 {
            break;
        }
        let gx = (kernel.log_scale(x + Point::new(h, 0.0)) - kernel.log_scale(x - Point::new(h, 0.0))) / (2.0 * h);
        let gy = (kernel.log_scale(x + Point::new(0.0, h)) - kernel.log_scale(x - Point::new(0.0, h))) / (2.0 * h);
        let g = Point::new(gx, gy);
        let gg = g.norm_sq();
        if !(gg > 0.0) || !gg.is_finite() {
            break;
        }
        let mut step = g * (-v / gg);
        let len = step.norm();
        if len > cell {
            step = step * (cell / len);
        }
        x = x + step;
    }
    let v = kernel.log_scale(x);
    (v.is_finite() && (v.exp() - 1.0).abs() < TRACE_ACCEPT_TOLERANCE).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::regular_ngon;
    use crate::loci::{ImplicitCurve, LocusFamily};

    #[test]
    fn equilateral_contour_lies_on_sextic() {
        let p = regular_ngon(3).unwrap();
        let window = Rect::centered_square(3.0).unwrap();
        let contours = trace_s1_locus(&p, window, 96);
        assert!(!contours.is_empty());
        let curve = ImplicitCurve::new(LocusFamily::EquilateralSextic);
        let mut count = 0;
        for c in &contours {
            for &q in c {
                assert!(curve.distance_estimate(q) < 1e-3, "{q}");
                count += 1;
            }
        }
        assert!(count > 100);
    }

    #[test]
    fn square_contour_crosses_axis_at_octic_roots() {
        let p = regular_ngon(4).unwrap();
        let window = Rect::new(-0.1, -2.1, 2.1, 2.1).unwrap();
        let contours = trace_s1_locus(&p, window, 128);
        let mut crossings = Vec::new();
        for c in &contours {
            for w in c.windows(2) {
                if (w[0].y < 0.0) != (w[1].y < 0.0) {
                    let t = w[0].y / (w[0].y - w[1].y);
                    crossings.push(w[0].x + t * (w[1].x - w[0].x));
                }
            }
        }
        for root in [(3.0f64 / 5.0).sqrt(), (5.0f64 / 3.0).sqrt()] {
            assert!(crossings.iter().any(|x| (x - root).abs() < 1e-3), "{root} not in {crossings:?}");
        }
    }

    #[test]
    fn empty_when_no_crossing() {
        let p = regular_ngon(4).unwrap();
        // The square's center region is strictly contracting.
        let window = Rect::centered_square(0.1).unwrap();
        assert!(trace_s1_locus(&p, window, 16).is_empty());
    }
}
