//! Counting over graph catalogs, with output in input order.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::counting::{count, CountError, CountLimits, Engine};
use crate::graph::io::parse_graph6;
use crate::graph::Multipole;
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    /// 0-based position among the non-empty input lines.
    pub index: usize,
    pub n: usize,
    pub nu: BigUint,
    /// `ν / 2^(n/2 - 1)`.
    pub ratio: BigRational,
}

impl ScanRecord {
    pub fn csv_line(&self) -> String {
        format!("{},{}", self.n, self.nu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub skipped: Vec<Skipped>,
}

/// `2^(n/2 - 1)`, with `n/2 - 1` clamped at 0.
pub fn klee_count(n: usize) -> BigUint {
    BigUint::from(1u32) << (n / 2).saturating_sub(1)
}

pub fn ratio(nu: &BigUint, n: usize) -> BigRational {
    BigRational::new(BigInt::from(nu.clone()), BigInt::from(klee_count(n)))
}

impl ScanReport {
    /// Record with the smallest ratio; the first one on ties.
    pub fn min_ratio(&self) -> Option<&ScanRecord> {
        self.records.iter().fold(None, |best: Option<&ScanRecord>, r| match best {
            Some(b) if b.ratio <= r.ratio => Some(b),
            _ => Some(r),
        })
    }

    /// Records with `ν < 2^(n/2 - 1)`.
    pub fn below_klee(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.nu < klee_count(r.n))
    }

    pub fn csv(&self) -> String {
        self.records.iter().map(|r| r.csv_line() + "\n").collect()
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} graphs", self.records.len())?;
        if let Some(m) = self.min_ratio() {
            write!(
                f,
                ", min ratio {} (approx {:.4}) at index {} (n = {})",
                rational::to_text(&m.ratio),
                rational::approx(&m.ratio),
                m.index,
                m.n
            )?;
        }
        write!(f, ", {} below 2^(n/2-1)", self.below_klee().count())?;
        if !self.skipped.is_empty() {
            write!(f, ", {} skipped", self.skipped.len())?;
        }
        Ok(())
    }
}

fn evaluate(index: usize, g: &Multipole, engine: Engine, limits: &CountLimits) -> Result<ScanRecord, CountError> {
    let nu = count(g, engine, limits)?.value;
    Ok(ScanRecord { index, n: g.order(), ratio: ratio(&nu, g.order()), nu })
}

/// Counts every graph6 line. Unparsable or non-cubic lines are skipped and
/// reported; a resource limit aborts the scan.
pub fn scan_graph6<S: AsRef<str> + Sync>(lines: &[S], engine: Engine, limits: &CountLimits) -> Result<ScanReport, CountError> {
    let inputs: Vec<&str> = lines.iter().map(|l| l.as_ref().trim()).filter(|l| !l.is_empty()).collect();
    let results: Vec<Result<Result<ScanRecord, Skipped>, CountError>> = inputs
        .par_iter()
        .enumerate()
        .map(|(index, line)| match parse_graph6(line) {
            Ok(g) => evaluate(index, &g, engine, limits).map(Ok),
            Err(e) => Ok(Err(Skipped { index, reason: e.to_string() })),
        })
        .collect();
    let mut report = ScanReport::default();
    for r in results {
        match r? {
            Ok(rec) => report.records.push(rec),
            Err(s) => report.skipped.push(s),
        }
    }
    Ok(report)
}

/// Same as [`scan_graph6`] for already parsed graphs.
pub fn scan_graphs(graphs: &[Multipole], engine: Engine, limits: &CountLimits) -> Result<ScanReport, CountError> {
    let records = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| evaluate(i, g, engine, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScanReport { records, skipped: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stream() {
        let r = scan_graph6(&["C~", "", "Bw", "garbage"], Engine::Auto, &CountLimits::default()).unwrap();
        assert_eq!(r.csv(), "4,2\n");
        assert_eq!(r.skipped.len(), 2);
        assert_eq!(r.min_ratio().unwrap().ratio, BigRational::from_integer(1.into()));
    }

    #[test]
    fn empty_stream() {
        let r = scan_graph6::<&str>(&[], Engine::Auto, &CountLimits::default()).unwrap();
        assert_eq!(r.csv(), "");
        assert_eq!(r.to_string(), "0 graphs, 0 below 2^(n/2-1)");
    }
}
