//! The circumcenter map on polygons.
//!
//! Given a point `M` and a polygon `P_1 .. P_n`, the map sends `P` to the
//! polygon whose `i`-th vertex is the circumcenter of `M P_i P_{i+1}`. After
//! `n` applications the image is a rotated and scaled copy of `P` about `M`.
//! This crate computes the map and its relatives ([`geometry`]), extracts the
//! induced scale and rotation ([`dynamics`]), evaluates the closed-form loci
//! for the equilateral triangle and the square ([`loci`]), counts the
//! area-contracting and area-expanding regions of the compactified plane
//! ([`census`]), and renders figures as SVG ([`render`]).

pub mod census;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod loci;
pub mod render;

pub use error::{Error, Result};
