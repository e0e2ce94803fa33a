use std::io::Write;

use serde::Serialize;

use super::RegionCounts;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "n,interior,noncompact,compact,total,expanding,stable,resolution";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionReport {
    pub n: usize,
    pub counts: RegionCounts,
    /// Counts with the finest refinement level treated as unresolved; `None`
    /// at depth 0.
    pub coarse_counts: Option<RegionCounts>,
    /// Counts agree across the last two refinement levels.
    pub stable: bool,
    pub resolution: usize,
    pub refine_depth: u32,
    pub radius: f64,
}

impl RegionReport {
    pub fn expanding_count(&self) -> usize {
        self.counts.expanding
    }

    pub fn total_contracting(&self) -> usize {
        self.counts.total_contracting()
    }

    pub fn require_stable(self) -> Result<Self> {
        if self.stable {
            Ok(self)
        } else {
            Err(Error::UnstableCount)
        }
    }

    pub fn csv_row(&self) -> CensusRow {
        CensusRow {
            n: self.n,
            interior: self.counts.interior,
            noncompact: self.counts.noncompact,
            compact: self.counts.compact,
            total: self.total_contracting(),
            expanding: self.counts.expanding,
            stable: self.stable,
            resolution: self.resolution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub interior: usize,
    pub noncompact: usize,
    pub compact: usize,
    pub total: usize,
    pub expanding: usize,
    pub stable: bool,
    pub resolution: usize,
}

pub fn write_csv<W: Write>(out: W, reports: &[RegionReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r.csv_row()).map_err(|e| Error::invalid(e.to_string()))?;
    }
    if reports.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(|e| Error::invalid(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::invalid(e.to_string()))
}

/// Published counts of contracting regions for the regular `n`-gon,
/// `n = 3 ..= 11`, with a single expanding region.
pub fn table1_counts(n: usize) -> Option<RegionCounts> {
    let (interior, noncompact, compact) = match n {
        3 => (0, 2 * n, 0),
        4 => (1, n, n),
        5 => (1, 2 * n, n),
        6 => (1, n, 2 * n),
        7 => (1, 2 * n, 2 * n),
        8 => (1, n, 3 * n),
        9 => (1, 2 * n, 3 * n),
        10 => (1, n, 4 * n),
        11 => (1, 2 * n, 4 * n),
        _ => return None,
    };
    Some(RegionCounts {
        interior,
        noncompact,
        compact,
        expanding: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(n: usize) -> RegionReport {
        let counts = table1_counts(n).unwrap();
        RegionReport {
            n,
            counts,
            coarse_counts: Some(counts),
            stable: true,
            resolution: 512,
            refine_depth: 4,
            radius: 4.0,
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[report(3), report(4)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, [CSV_HEADER, "3,0,6,0,6,1,true,512", "4,1,4,4,9,1,true,512"]);
        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim(), CSV_HEADER);
    }

    #[test]
    fn table_totals() {
        let totals: Vec<usize> = (3..=11).map(|n| table1_counts(n).unwrap().total_contracting()).collect();
        assert_eq!(totals, [6, 9, 16, 19, 29, 33, 46, 51, 67]);
        assert!(table1_counts(12).is_none());
    }

    #[test]
    fn unstable_reports_error() {
        let mut r = report(5);
        assert!(r.require_stable().is_ok());
        r.stable = false;
        assert_eq!(r.require_stable(), Err(Error::UnstableCount));
    }
}
