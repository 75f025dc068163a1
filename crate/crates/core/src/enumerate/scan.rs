use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_form, certificate, Certificate};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code, MAX_ENUM_DIM};

/// Outcome of replacing every column by every nonzero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub cases: usize,
    pub original_distance: usize,
    /// Cases whose minimum distance dropped below the original.
    pub lowered: usize,
    /// Cases keeping the distance and equivalent to the original.
    pub equivalent: usize,
    /// Distinct new classes keeping the distance, with one witness `(column, vector)` each.
    pub inequivalent: Vec<(Certificate, usize, u64)>,
    /// Number of cases per resulting minimum distance.
    pub distance_histogram: BTreeMap<usize, usize>,
}

impl ScanReport {
    pub fn is_unique(&self) -> bool {
        self.inequivalent.is_empty() && self.lowered + self.equivalent == self.cases
    }
}

/// Replaces each column of `code` by each of the `2^k - 1` nonzero vectors.
pub fn column_replacement_scan(code: &Code) -> Result<ScanReport> {
    let (n, k) = (code.len(), code.dim());
    if k > MAX_ENUM_DIM.min(20) {
        return Err(Error::DimensionOverBudget { k, max: MAX_ENUM_DIM.min(20) });
    }
    let d = code.min_weight()?;
    let original = certificate(code)?;
    let columns = code.generator().columns();
    let q = 1u64 << k;
    // weight of message m
    let weights: Vec<usize> = (0..q).map(|m| code.encode(m).count_ones() as usize).collect();
    let par = |x: u64| (x.count_ones() & 1) as usize;
    type Hit = (usize, usize, Option<(Certificate, usize, u64)>);
    let per_col: Vec<Result<Vec<Hit>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let old = columns[j];
            let mut hits = Vec::with_capacity(q as usize - 1);
            for v in 1..q {
                let dist = (1..q)
                    .map(|m| weights[m as usize] - par(m & old) + par(m & v))
                    .min()
                    .unwrap_or(0);
                if dist < d {
                    hits.push((dist, 0, None));
                    continue;
                }
                let mut cols = columns.clone();
                cols[j] = v;
                let c = Code::new(BitMatrix::from_columns(k, &cols)?)?;
                let cert = canonical_form(&c)?.certificate;
                if cert == original {
                    hits.push((dist, 1, None));
                } else {
                    hits.push((dist, 2, Some((cert, j, v))));
                }
            }
            Ok(hits)
        })
        .collect();
    let mut report = ScanReport {
        cases: 0,
        original_distance: d,
        lowered: 0,
        equivalent: 0,
        inequivalent: Vec::new(),
        distance_histogram: BTreeMap::new(),
    };
    for hits in per_col {
        for (dist, kind, new) in hits? {
            report.cases += 1;
            *report.distance_histogram.entry(dist).or_default() += 1;
            match kind {
                0 => report.lowered += 1,
                1 => report.equivalent += 1,
                _ => {
                    let (cert, j, v) = new.expect("kind 2 carries a witness");
                    if !report.inequivalent.iter().any(|(c, _, _)| *c == cert) {
                        report.inequivalent.push((cert, j, v));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::equivalent;

    #[test]
    fn simplex_scan_against_oracle() {
        let c = Code::new("1010101\n0110011\n0001111".parse().unwrap()).unwrap();
        let r = column_replacement_scan(&c).unwrap();
        assert_eq!(r.cases, 49);
        // oracle: rebuild each case and compare with pairwise equivalence
        let cols = c.generator().columns();
        let (mut low, mut eq) = (0, 0);
        for j in 0..7 {
            for v in 1..8u64 {
                let mut cc = cols.clone();
                cc[j] = v;
                let Ok(x) = Code::new(BitMatrix::from_columns(3, &cc).unwrap()) else {
                    low += 1;
                    continue;
                };
                if x.min_weight().unwrap() < 4 {
                    low += 1;
                } else if equivalent(&x, &c).unwrap() {
                    eq += 1;
                }
            }
        }
        assert_eq!((r.lowered, r.equivalent), (low, eq));
        assert!(r.is_unique());
    }

    #[test]
    fn repetition_code() {
        let c = Code::new("1111".parse().unwrap()).unwrap();
        let r = column_replacement_scan(&c).unwrap();
        assert_eq!((r.cases, r.equivalent), (4, 4));
    }
}
