//! Plane primitives and the circumcenter map family.

mod map;
mod point;
mod polygon;
mod rect;

pub use map::{
    antipedal_polygon, circumcenter, circumcenter_map, circumcenter_with_tolerance,
    inverse_circumcenter_map, pedal_polygon, reflection_polygon, relative_twice_area, MapConfig,
};
pub use point::Point;
pub use polygon::{regular_ngon, Polygon, COINCIDENCE_TOLERANCE};
pub use rect::Rect;
