//! Closed-form loci, special points and numerical contour tracing.

mod fixed_points;
mod lines;
mod polynomials;
mod trace;

pub use fixed_points::{equilateral_fixed_points, k1, k2, PointRole, SpecialPoint, SpecialPoints};
pub use lines::{alpha_zero_lines, verify_alpha_zero_lines, LineResidual, LineSampling, LineVerification};
pub use polynomials::{
    eval_equilateral_alpha_cubic, eval_equilateral_sextic, eval_monomials,
    eval_square_alpha_quartic, eval_square_octic, ImplicitCurve, LocusFamily, Monomial,
};
pub use trace::{trace_s1_locus, Polyline, TRACE_ACCEPT_TOLERANCE};
