use serde::{Deserialize, Serialize};

use super::Point;
use crate::error::{Error, Result};

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let finite = [x0, y0, x1, y1].iter().all(|v| v.is_finite());
        if !finite || x1 <= x0 || y1 <= y0 {
            return Err(Error::invalid(format!(
                "rectangle [{x0}, {x1}] x [{y0}, {y1}] is empty or non-finite"
            )));
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    /// `[-half, half]^2`
    pub fn centered_square(half: f64) -> Result<Self> {
        Rect::new(-half, -half, half, half)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    /// Point at fractional position `(u, v)` in `[0, 1]^2`.
    pub fn lerp(&self, u: f64, v: f64) -> Point {
        Point::new(self.x0 + u * self.width(), self.y0 + v * self.height())
    }
}
