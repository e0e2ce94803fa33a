//! Parsers for command-line values.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use circmap::geometry::{regular_ngon, Point, Polygon, Rect};

/// Where a polygon comes from: `regular:N` or `file:PATH`.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSource {
    Regular(usize),
    File(PathBuf),
}

impl FromStr for ShapeSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some(("regular", n)) => n
                .parse()
                .map(ShapeSource::Regular)
                .map_err(|_| format!("`{n}` is not a vertex count")),
            Some(("file", path)) if !path.is_empty() => Ok(ShapeSource::File(path.into())),
            _ => Err(format!("expected regular:N or file:PATH, got `{s}`")),
        }
    }
}

impl ShapeSource {
    pub fn load(&self) -> Result<Polygon, crate::CliError> {
        match self {
            ShapeSource::Regular(n) => Ok(regular_ngon(*n)?),
            ShapeSource::File(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| crate::CliError::input(format!("cannot read {}: {e}", path.display())))?;
                let pts = parse_vertices(&text).map_err(crate::CliError::input)?;
                Ok(Polygon::new(pts)?)
            }
        }
    }
}

/// Vertices as a JSON array of `[x, y]` pairs, or one `x,y` (or `x y`) pair
/// per line with `#` comments.
pub fn parse_vertices(text: &str) -> Result<Vec<Point>, String> {
    if text.trim_start().starts_with('[') {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| format!("bad vertex JSON: {e}"))?;
        return Ok(pairs.into_iter().map(Point::from).collect());
    }
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let nums: Vec<&str> = l.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
            match nums.as_slice() {
                [x, y] => Ok(Point::new(parse_f64(x)?, parse_f64(y)?)),
                _ => Err(format!("expected two coordinates, got `{l}`")),
            }
        })
        .collect()
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_list(s: &str, len: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != len {
        return Err(format!("expected {len} comma-separated numbers, got `{s}`"));
    }
    parts.into_iter().map(parse_f64).collect()
}

/// `X,Y`
pub fn parse_point(s: &str) -> Result<Point, String> {
    let v = parse_list(s, 2)?;
    Ok(Point::new(v[0], v[1]))
}

/// `X0,Y0,X1,Y1`
pub fn parse_window(s: &str) -> Result<Rect, String> {
    let v = parse_list(s, 4)?;
    Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}
