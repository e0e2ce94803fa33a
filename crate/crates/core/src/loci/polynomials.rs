//! Closed-form loci for the unit-circumradius equilateral triangle and the
//! square with vertices on the axes.
//!
//! Each polynomial is kept twice: as the printed list of monomials, and as a
//! Horner-grouped evaluator over the same integer coefficients. The two are
//! checked against each other in the tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusFamily {
    /// `s = 1` for the equilateral triangle (degree 6).
    EquilateralSextic,
    /// `alpha = 0` for the equilateral triangle (degree 3).
    EquilateralAlphaCubic,
    /// `s = 1` for the square (degree 8).
    SquareOctic,
    /// `alpha = 0` for the square (degree 4).
    SquareAlphaQuartic,
}

/// `(coefficient, power of x, power of y)`
pub type Monomial = (f64, u32, u32);

const SEXTIC: &[Monomial] = &[
    (3.0, 6, 0),
    (-1.0, 0, 6),
    (-12.0, 5, 0),
    (9.0, 0, 4),
    (-27.0, 4, 2),
    (9.0, 4, 0),
    (24.0, 3, 2),
    (6.0, 3, 0),
    (33.0, 2, 4),
    (18.0, 2, 2),
    (-6.0, 2, 0),
    (36.0, 1, 4),
    (-18.0, 1, 2),
    (-6.0, 0, 2),
];

const CUBIC: &[Monomial] = &[(1.0, 0, 3), (-3.0, 2, 1)];

const OCTIC: &[Monomial] = &[
    (15.0, 8, 0),
    (-68.0, 6, 2),
    (90.0, 4, 4),
    (-68.0, 2, 6),
    (15.0, 0, 8),
    (-64.0, 6, 0),
    (64.0, 4, 2),
    (64.0, 2, 4),
    (-64.0, 0, 6),
    (98.0, 4, 0),
    (52.0, 2, 2),
    (98.0, 0, 4),
    (-64.0, 2, 0),
    (-64.0, 0, 2),
    (15.0, 0, 0),
];

const QUARTIC: &[Monomial] = &[(1.0, 3, 1), (-1.0, 1, 3)];

impl LocusFamily {
    pub const ALL: [LocusFamily; 4] = [
        LocusFamily::EquilateralSextic,
        LocusFamily::EquilateralAlphaCubic,
        LocusFamily::SquareOctic,
        LocusFamily::SquareAlphaQuartic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LocusFamily::EquilateralSextic => "equilateral-sextic",
            LocusFamily::EquilateralAlphaCubic => "equilateral-alpha-cubic",
            LocusFamily::SquareOctic => "square-octic",
            LocusFamily::SquareAlphaQuartic => "square-alpha-quartic",
        }
    }

    /// Vertex count of the reference polygon the locus belongs to.
    pub fn polygon_sides(self) -> usize {
        match self {
            LocusFamily::EquilateralSextic | LocusFamily::EquilateralAlphaCubic => 3,
            LocusFamily::SquareOctic | LocusFamily::SquareAlphaQuartic => 4,
        }
    }

    pub fn degree(self) -> u32 {
        self.monomials().iter().map(|&(_, i, j)| i + j).max().unwrap_or(0)
    }

    pub fn monomials(self) -> &'static [Monomial] {
        match self {
            LocusFamily::EquilateralSextic => SEXTIC,
            LocusFamily::EquilateralAlphaCubic => CUBIC,
            LocusFamily::SquareOctic => OCTIC,
            LocusFamily::SquareAlphaQuartic => QUARTIC,
        }
    }

    pub fn evaluate(self, m: Point) -> f64 {
        match self {
            LocusFamily::EquilateralSextic => eval_equilateral_sextic(m),
            LocusFamily::EquilateralAlphaCubic => eval_equilateral_alpha_cubic(m),
            LocusFamily::SquareOctic => eval_square_octic(m),
            LocusFamily::SquareAlphaQuartic => eval_square_alpha_quartic(m),
        }
    }

    /// Analytic gradient from the monomial list.
    pub fn gradient(self, m: Point) -> Point {
        let mut g = Point::ORIGIN;
        for &(c, i, j) in self.monomials() {
            if i > 0 {
                g.x += c * f64::from(i) * m.x.powi(i as i32 - 1) * m.y.powi(j as i32);
            }
            if j > 0 {
                g.y += c * f64::from(j) * m.x.powi(i as i32) * m.y.powi(j as i32 - 1);
            }
        }
        g
    }
}

impl fmt::Display for LocusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LocusFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LocusFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown locus family `{s}`")))
    }
}

/// A locus polynomial in the coordinates of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImplicitCurve {
    pub family: LocusFamily,
}

impl ImplicitCurve {
    pub fn new(family: LocusFamily) -> Self {
        ImplicitCurve { family }
    }

    pub fn evaluate(&self, m: Point) -> f64 {
        self.family.evaluate(m)
    }

    /// `|f| / |grad f|`, a first-order distance to the zero set.
    pub fn distance_estimate(&self, m: Point) -> f64 {
        self.evaluate(m).abs() / self.family.gradient(m).norm()
    }
}

/// Sum of the monomials, term by term in printed order.
pub fn eval_monomials(terms: &[Monomial], m: Point) -> f64 {
    terms
        .iter()
        .map(|&(c, i, j)| c * m.x.powi(i as i32) * m.y.powi(j as i32))
        .sum()
}

/// `s = 1` locus of the equilateral, Horner in `x` with coefficients in `y^2`.
pub fn eval_equilateral_sextic(m: Point) -> f64 {
    let (x, y) = (m.x, m.y);
    let y2 = y * y;
    let y4 = y2 * y2;
    let y6 = y4 * y2;
    let c5 = -12.0;
    let c4 = -27.0 * y2 + 9.0;
    let c3 = 24.0 * y2 + 6.0;
    let c2 = 33.0 * y4 + 18.0 * y2 - 6.0;
    let c1 = 36.0 * y4 - 18.0 * y2;
    let c0 = -y6 + 9.0 * y4 - 6.0 * y2;
    (((((3.0 * x + c5) * x + c4) * x + c3) * x + c2) * x + c1) * x + c0
}

/// `y (y^2 - 3 x^2)`
pub fn eval_equilateral_alpha_cubic(m: Point) -> f64 {
    m.y * (m.y * m.y - 3.0 * m.x * m.x)
}

/// `s = 1` locus of the square, Horner in `u = x^2` with coefficients
/// Horner in `v = y^2`.
pub fn eval_square_octic(m: Point) -> f64 {
    let u = m.x * m.x;
    let v = m.y * m.y;
    let c4 = 15.0;
    let c3 = -68.0 * v - 64.0;
    let c2 = (90.0 * v + 64.0) * v + 98.0;
    let c1 = ((-68.0 * v + 64.0) * v + 52.0) * v - 64.0;
    let c0 = (((15.0 * v - 64.0) * v + 98.0) * v - 64.0) * v + 15.0;
    (((c4 * u + c3) * u + c2) * u + c1) * u + c0
}

/// `x y (x^2 - y^2)`
pub fn eval_square_alpha_quartic(m: Point) -> f64 {
    m.x * m.y * (m.x * m.x - m.y * m.y)
}
