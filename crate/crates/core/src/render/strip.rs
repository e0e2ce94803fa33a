use std::fmt::Write;

use super::{close_svg, num, open_svg, RenderSpec};
use crate::census::StretchSweepResult;

/// Contracting-region total against stretch factor, as a step plot. Entries
/// whose count was not stable are drawn hollow; count changes are marked with
/// dashed verticals halfway between the two samples.
pub fn render_stretch_strip(sweep: &StretchSweepResult, spec: &RenderSpec) -> String {
    let pal = &spec.palette;
    let mut out = open_svg(spec);
    if sweep.entries.is_empty() {
        return close_svg(out);
    }
    let totals: Vec<usize> = sweep.entries.iter().map(|e| e.report.total_contracting()).collect();
    let (t0, t1) = (sweep.entries[0].t, sweep.entries[sweep.entries.len() - 1].t);
    let lo = totals.iter().min().copied().unwrap_or(0).saturating_sub(1) as f64;
    let hi = totals.iter().max().copied().unwrap_or(0) as f64 + 1.0;
    let left = spec.margin + 32.0;
    let right = f64::from(spec.width) - spec.margin;
    let top = spec.margin;
    let bottom = f64::from(spec.height) - spec.margin - 20.0;
    let x = |t: f64| {
        if t1 > t0 {
            left + (t - t0) / (t1 - t0) * (right - left)
        } else {
            0.5 * (left + right)
        }
    };
    let y = |c: f64| bottom - (c - lo) / (hi - lo) * (bottom - top);

    writeln!(
        out,
        r#"<path class="axes" d="M{} {}L{} {}L{} {}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        num(left),
        num(top),
        num(left),
        num(bottom),
        num(right),
        num(bottom),
        pal.locus,
        num(spec.stroke_width)
    )
    .unwrap();
    let mut levels = totals.clone();
    levels.sort_unstable();
    levels.dedup();
    for c in levels {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{c}</text>"#,
            num(left - 4.0),
            num(y(c as f64) + 4.0)
        )
        .unwrap();
    }
    for t in [t0, t1] {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">t={}</text>"#,
            num(x(t)),
            num(bottom + 16.0),
            num(t)
        )
        .unwrap();
    }
    for tr in sweep.transitions() {
        let xm = x(0.5 * (tr.t_before + tr.t_after));
        writeln!(
            out,
            r#"<path class="transition" d="M{} {}L{} {}" stroke="{}" stroke-width="{}" stroke-dasharray="4 3"/>"#,
            num(xm),
            num(top),
            num(xm),
            num(bottom),
            pal.ambiguous,
            num(spec.stroke_width)
        )
        .unwrap();
    }

    let mut d = String::new();
    for (k, (e, &c)) in sweep.entries.iter().zip(&totals).enumerate() {
        let (px, py) = (x(e.t), y(c as f64));
        if k == 0 {
            write!(d, "M{} {}", num(px), num(py)).unwrap();
        } else {
            let prev_x = x(0.5 * (sweep.entries[k - 1].t + e.t));
            write!(d, "H{}V{}", num(prev_x), num(py)).unwrap();
        }
    }
    write!(d, "H{}", num(x(t1))).unwrap();
    writeln!(
        out,
        r#"<path class="count" d="{d}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        pal.contracting,
        num(spec.highlight_width)
    )
    .unwrap();
    for (e, &c) in sweep.entries.iter().zip(&totals) {
        let fill = if e.report.stable { pal.contracting.as_str() } else { "none" };
        writeln!(
            out,
            r#"<circle class="sample" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="{}"/>"#,
            num(x(e.t)),
            num(y(c as f64)),
            num(spec.marker_radius),
            pal.contracting
        )
        .unwrap();
    }
    close_svg(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{RegionCounts, RegionReport, StretchEntry};
    use crate::render::FigureKind;

    fn entry(t: f64, noncompact: usize) -> StretchEntry {
        StretchEntry {
            t,
            report: RegionReport {
                n: 3,
                counts: RegionCounts {
                    interior: 0,
                    noncompact,
                    compact: 0,
                    expanding: 1,
                },
                coarse_counts: None,
                stable: t < 2.0,
                resolution: 64,
                refine_depth: 0,
                radius: 4.0,
            },
        }
    }

    #[test]
    fn one_marker_per_sample_and_per_transition() {
        let sweep = StretchSweepResult {
            entries: vec![entry(1.0, 6), entry(1.5, 6), entry(2.0, 5), entry(2.5, 4)],
        };
        let spec = RenderSpec::new(FigureKind::StretchStrip);
        let svg = render_stretch_strip(&sweep, &spec);
        assert_eq!(svg.matches("class=\"sample\"").count(), 4);
        assert_eq!(svg.matches("class=\"transition\"").count(), 2);
        assert_eq!(svg.matches("fill=\"none\" stroke=\"#4daf4a\"/>").count(), 2);
        assert_eq!(svg, render_stretch_strip(&sweep, &spec));
    }

    #[test]
    fn empty_sweep_is_blank() {
        let svg = render_stretch_strip(&StretchSweepResult { entries: vec![] }, &RenderSpec::new(FigureKind::StretchStrip));
        assert!(!svg.contains("<circle"));
    }
}
