use circmap::census::{census_polygon, table1_counts, CensusConfig, Sign};
use circmap::geometry::{regular_ngon, Point};
use circmap::render::{hemisphere_radius, hemisphere_raster};
use petgraph::unionfind::UnionFind;

/// 4-connected components of contracting samples in a square raster of the
/// unit disk, ignoring samples within `cut` of the center.
fn green_components(raster: &[Option<Sign>], size: usize, cut: f64) -> usize {
    let step = 2.0 / size as f64;
    let green = |k: usize| {
        let q = Point::new(-1.0 + ((k % size) as f64 + 0.5) * step, -1.0 + ((k / size) as f64 + 0.5) * step);
        raster[k] == Some(Sign::Contracting) && q.norm() >= cut
    };
    let mut uf = UnionFind::<usize>::new(raster.len());
    for b in 0..size {
        for a in 0..size {
            let k = b * size + a;
            if !green(k) {
                continue;
            }
            if a + 1 < size && green(k + 1) {
                uf.union(k, k + 1);
            }
            if b + 1 < size && green(k + size) {
                uf.union(k, k + size);
            }
        }
    }
    let mut roots: Vec<usize> = (0..raster.len()).filter(|&k| green(k)).map(|k| uf.find(k)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

#[test]
fn pentagon_hemisphere_shows_every_contracting_region() {
    let o = census_polygon(&regular_ngon(5).unwrap(), &CensusConfig::with_resolution(256, 3)).unwrap();
    let expected = table1_counts(5).unwrap().total_contracting();
    // Every unbounded region reaches the center, so count outside the same
    // neighborhood of infinity that the census collapses.
    let cut = hemisphere_radius(o.config.infinity_radius);
    for size in [600, 900, 1200] {
        let raster = hemisphere_raster(&o.plane, &o.inverted, size);
        assert_eq!(green_components(&raster, size, cut), expected, "raster {size}");
    }
}
