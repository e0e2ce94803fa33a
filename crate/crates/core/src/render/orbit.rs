use std::fmt::Write;

use super::{bounding_rect, close_svg, num, open_svg, path_data, RenderSpec, Viewport};
use crate::dynamics::OrbitRecord;

/// One closed path per entry of `orbit.iterates`, with iterates whose index
/// is a multiple of `n` drawn in the highlight style, and a marker at `M`.
pub fn render_orbit(orbit: &OrbitRecord, spec: &RenderSpec) -> String {
    let n = orbit.start.len().max(1);
    let world = bounding_rect(
        orbit
            .iterates
            .iter()
            .flat_map(|p| p.vertices().iter().copied())
            .chain(std::iter::once(orbit.m)),
    );
    let vp = Viewport::fit(world, spec);
    let pal = &spec.palette;
    let mut out = open_svg(spec);
    // Plain iterates first so the highlighted ones sit on top.
    for highlighted in [false, true] {
        for (k, p) in orbit.iterates.iter().enumerate() {
            if (k % n == 0) != highlighted {
                continue;
            }
            let (class, color, width) = if highlighted {
                ("iterate highlight", &pal.highlight, spec.highlight_width)
            } else {
                ("iterate", &pal.orbit, spec.stroke_width)
            };
            writeln!(
                out,
                r#"<path class="{class}" data-step="{k}" d="{}" fill="none" stroke="{color}" stroke-width="{}" stroke-linejoin="round"/>"#,
                path_data(&vp, p.vertices(), true),
                num(width)
            )
            .unwrap();
        }
    }
    let (cx, cy) = vp.map(orbit.m);
    writeln!(
        out,
        r#"<circle class="center" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
        num(cx),
        num(cy),
        num(spec.marker_radius),
        pal.marker
    )
    .unwrap();
    close_svg(out)
}
