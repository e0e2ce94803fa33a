use std::f64::consts::TAU;

use proptest::prelude::*;

use circmap::dynamics::{extract_similarity, repeat_similarity_check, angle_distance, ScaleKernel};
use circmap::geometry::{
    antipedal_polygon, circumcenter_map, inverse_circumcenter_map, pedal_polygon, reflection_polygon, regular_ngon,
    relative_twice_area, MapConfig, Point, Polygon,
};

/// Center of the circle through `a, b, c` by intersecting two perpendicular
/// bisectors (Cramer's rule on `2 (q - a) . x = |q|^2 - |a|^2`).
fn bisector_circumcenter(a: Point, b: Point, c: Point) -> Point {
    let (u, v) = (b - a, c - a);
    let (ru, rv) = (0.5 * (b.norm_sq() - a.norm_sq()), 0.5 * (c.norm_sq() - a.norm_sq()));
    let det = u.x * v.y - u.y * v.x;
    Point::new((ru * v.y - rv * u.y) / det, (u.x * rv - v.x * ru) / det)
}

fn point_in(r: f64) -> impl Strategy<Value = Point> {
    (-r..r, -r..r).prop_map(|(x, y)| Point::new(x, y))
}

/// A polygon with 3 to 8 vertices in `[-2, 2]^2` and a center clear of
/// every sideline.
fn polygon_and_center() -> impl Strategy<Value = (Polygon, Point)> {
    (3usize..=8)
        .prop_flat_map(|n| (prop::collection::vec(point_in(2.0), n), point_in(3.0)))
        .prop_filter_map("degenerate", |(pts, m)| {
            let p = Polygon::new(pts).ok()?;
            let clear = p.sides().all(|(a, b)| relative_twice_area(m, a, b).abs() > 0.02);
            clear.then_some((p, m))
        })
}

/// Rotation by `theta`, scaling by `k`, then translation by `t`.
fn similarity(theta: f64, k: f64, t: Point) -> impl Fn(Point) -> Point {
    move |p: Point| p.rotated(theta) * k + t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn explicit_map_matches_bisector_construction((p, m) in polygon_and_center()) {
        let image = circumcenter_map(&p, m, &MapConfig::default()).unwrap();
        for (i, (a, b)) in p.sides().enumerate() {
            let oracle = bisector_circumcenter(m, a, b);
            let err = image.vertex(i).distance(oracle) / oracle.norm().max(p.diameter());
            prop_assert!(err < 1e-12, "vertex {} error {}", i, err);
        }
    }

    #[test]
    fn inverse_undoes_forward((p, m) in polygon_and_center()) {
        let image = circumcenter_map(&p, m, &MapConfig::default()).unwrap();
        let back = inverse_circumcenter_map(&image, m).unwrap();
        prop_assert!(back.labeled_distance(&p) < 1e-10 * p.diameter().max(m.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reflection_is_doubled_pedal((p, m) in polygon_and_center()) {
        let refl = reflection_polygon(&p, m).unwrap();
        let pedal = pedal_polygon(&p, m).unwrap();
        let scale = p.diameter().max(m.norm());
        for i in 0..p.len() {
            let twice = m + (pedal.vertex(i) - m) * 2.0;
            prop_assert!(refl.vertex(i).distance(twice) < 1e-12 * scale);
        }
    }

    #[test]
    fn image_is_half_antipedal((p, m) in polygon_and_center()) {
        let image = circumcenter_map(&p, m, &MapConfig::default()).unwrap();
        let half = antipedal_polygon(&p, m).unwrap().homothety(m, 0.5);
        let scale = image.diameter().max(m.norm());
        prop_assert!(image.labeled_distance(&half) < 1e-10 * scale);
    }

    #[test]
    fn map_commutes_with_similarities(
        (p, m) in polygon_and_center(),
        theta in 0.0..TAU,
        k in 0.2f64..5.0,
        t in point_in(10.0),
    ) {
        let f = similarity(theta, k, t);
        let cfg = MapConfig::default();
        let direct = circumcenter_map(&p.map_vertices(&f), f(m), &cfg).unwrap();
        let moved = circumcenter_map(&p, m, &cfg).unwrap().map_vertices(&f);
        let scale = moved.diameter().max(f(m).norm()).max(t.norm());
        prop_assert!(direct.labeled_distance(&moved) < 1e-10 * scale);
    }

    #[test]
    fn n_steps_give_one_similarity((p, m) in polygon_and_center()) {
        // Orbits that brush a sideline of some iterate are ill-conditioned;
        // only well-separated ones are expected to certify.
        if let Ok((first, second)) = repeat_similarity_check(&p, m) {
            prop_assert!(first.residual < 1e-8);
            prop_assert!((first.s - second.s).abs() < 1e-8 * first.s.max(1.0));
            prop_assert!(angle_distance(first.alpha, second.alpha) < 1e-8);
        }
    }

    #[test]
    fn regular_field_has_dihedral_symmetry(n in 3usize..=8, m in point_in(4.0)) {
        let p = regular_ngon(n).unwrap();
        prop_assume!(p.sideline_distance(m) > 1e-3);
        let kernel = ScaleKernel::new(&p);
        let v = kernel.log_scale(m);
        prop_assume!(v.is_finite());
        let rotated = kernel.log_scale(m.rotated(TAU / n as f64));
        let mirrored = kernel.log_scale(Point::new(m.x, -m.y));
        let tol = 1e-9 * v.abs().max(1.0);
        prop_assert!((v - rotated).abs() < tol, "rotation {} vs {}", v, rotated);
        prop_assert!((v - mirrored).abs() < tol, "mirror {} vs {}", v, mirrored);
    }

    #[test]
    fn similarity_reproduces_the_nth_iterate((p, m) in polygon_and_center()) {
        if let Ok(sim) = extract_similarity(&p, m) {
            let orbit = circmap::dynamics::iterate(&p, m, p.len());
            let predicted = p.map_vertices(|v| sim.apply(v));
            let scale = orbit.last().diameter().max(m.norm());
            prop_assert!(predicted.labeled_distance(orbit.last()) < 1e-8 * scale);
        }
    }
}
