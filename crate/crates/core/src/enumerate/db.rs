//! Text databases of classified codes.
//!
//! ```text
//! CODEDB v1 n=34 k=2 W=20,24,28,32 flags=full
//! <cert-hex> <aut-order> <column,column,...> <i:A_i ...>
//! #checkpoint 128
//! #complete
//! ```
//!
//! Columns are hexadecimal integers with row 0 in the least significant bit.
//! Records are kept sorted by certificate. Files are only ever appended to
//! while a search runs; `#checkpoint` records the number of parents done.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigUint;

use super::spec::SearchSpec;
use crate::canon::{canonical_form_with_budget, Certificate, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code};
use crate::spectrum::WeightDistribution;

#[derive(Clone, Debug)]
pub struct Record {
    pub certificate: Certificate,
    /// Canonical representative.
    pub code: Code,
    pub weights: WeightDistribution,
}

impl Record {
    pub fn from_code(code: &Code) -> Result<Self> {
        Self::from_code_with_budget(code, DEFAULT_NODE_BUDGET)
    }

    pub fn from_code_with_budget(code: &Code, budget: u64) -> Result<Self> {
        let f = canonical_form_with_budget(code, budget)?;
        let weights = f.code.weight_distribution()?.clone();
        Ok(Self {
            certificate: f.certificate,
            code: f.code,
            weights,
        })
    }

    pub fn to_line(&self) -> String {
        let cols: Vec<String> = self
            .code
            .generator()
            .columns()
            .iter()
            .map(|c| format!("{c:x}"))
            .collect();
        format!(
            "{} {} {} {}",
            self.certificate.to_hex(),
            self.certificate.aut_order(),
            cols.join(","),
            self.weights
        )
    }

    fn parse(line: &str, n: usize, k: usize, lineno: usize) -> Result<Self> {
        let bad = |m: &str| Error::Database(format!("line {lineno}: {m}"));
        let mut it = line.split_whitespace();
        let cert = it.next().ok_or_else(|| bad("missing certificate"))?;
        let aut: BigUint = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad automorphism order"))?;
        let cols = it
            .next()
            .ok_or_else(|| bad("missing columns"))?
            .split(',')
            .map(|c| u64::from_str_radix(c, 16).map_err(|_| bad("bad column")))
            .collect::<Result<Vec<u64>>>()?;
        if cols.len() != n {
            return Err(bad("column count differs from header"));
        }
        let code = Code::new(BitMatrix::from_columns(k, &cols)?)?;
        let rest: Vec<&str> = it.collect();
        let weights = WeightDistribution::parse(n, &rest.join(" ")).map_err(|e| bad(&e.to_string()))?;
        Ok(Self {
            certificate: Certificate::from_hex(cert, aut)?,
            code,
            weights,
        })
    }
}

/// Classified codes of one length and dimension, keyed by certificate.
#[derive(Clone, Debug)]
pub struct CodeDatabase {
    pub spec: SearchSpec,
    pub n: usize,
    pub k: usize,
    records: BTreeMap<Vec<u8>, Record>,
    pub complete: bool,
    pub checkpoint: Option<usize>,
}

impl CodeDatabase {
    pub fn new(spec: &SearchSpec, k: usize, n: usize) -> Self {
        Self {
            spec: spec.at(k, n, n),
            n,
            k,
            records: BTreeMap::new(),
            complete: false,
            checkpoint: None,
        }
    }

    /// Inserts a record; returns `false` if its certificate is already present.
    pub fn insert(&mut self, r: Record) -> bool {
        let key = r.certificate.bytes().to_vec();
        if self.records.contains_key(&key) {
            return false;
        }
        self.records.insert(key, r);
        true
    }

    pub fn contains(&self, cert: &Certificate) -> bool {
        self.records.contains_key(cert.bytes())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &Record> {
        self.records.values()
    }

    pub fn certificates(&self) -> BTreeSet<Vec<u8>> {
        self.records.keys().cloned().collect()
    }

    pub fn header(&self) -> String {
        format!(
            "CODEDB v1 n={} k={} W={} flags={}",
            self.n,
            self.k,
            self.spec.weights_field(),
            self.spec.flags()
        )
    }

    /// Full text: header, sorted records and the completion marker.
    pub fn to_text(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for r in self.records() {
            let _ = writeln!(s, "{}", r.to_line());
        }
        if self.complete {
            s.push_str("#complete\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, head) = lines
            .next()
            .ok_or_else(|| Error::Database("empty database".into()))?;
        let fields: BTreeMap<&str, &str> = head
            .split_whitespace()
            .skip(2)
            .filter_map(|f| f.split_once('='))
            .collect();
        if !head.starts_with("CODEDB v1 ") {
            return Err(Error::Database(format!("bad header {head:?}")));
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| Error::Database(format!("header lacks {key}=")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| Error::Database(format!("bad {key}= value")))
        };
        let (n, k) = (num("n")?, num("k")?);
        let spec = SearchSpec::from_fields(k, n, get("W")?, get("flags")?)?;
        let mut db = Self::new(&spec, k, n);
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if rest == "complete" {
                    db.complete = true;
                } else if let Some(c) = rest.strip_prefix("checkpoint") {
                    db.checkpoint = Some(
                        c.trim()
                            .parse()
                            .map_err(|_| Error::Database(format!("line {}: bad checkpoint", i + 1)))?,
                    );
                }
                continue;
            }
            let r = Record::parse(line, n, k, i + 1)?;
            if !db.insert(r) {
                return Err(Error::Database(format!("line {}: duplicate certificate", i + 1)));
            }
        }
        Ok(db)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Database(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::Database(format!("{}: {e}", path.display())))
    }

    /// Appends raw lines to a database file.
    pub(crate) fn append(path: &Path, lines: &[String]) -> Result<()> {
        let mut f = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Database(format!("{}: {e}", path.display())))?;
        for l in lines {
            writeln!(f, "{l}").map_err(|e| Error::Database(e.to_string()))?;
        }
        Ok(())
    }

    /// Rechecks every record: rank, weights against the spec, stored weight
    /// distribution and certificate.
    pub fn verify(&self) -> Result<()> {
        for r in self.records() {
            let fail = |m: String| Err(Error::Database(format!("record {}: {m}", r.certificate)));
            if r.code.len() != self.n || r.code.dim() != self.k {
                return fail("wrong parameters".into());
            }
            if !self.spec.accepts(&r.code)? {
                return fail("violates the search spec".into());
            }
            if r.code.weight_distribution()? != &r.weights {
                return fail("stored weight distribution differs".into());
            }
            let again = Record::from_code(&r.code)?;
            if again.certificate != r.certificate {
                return fail("certificate does not recompute".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let spec = SearchSpec::new(2, 6, 6, [3, 6]).unwrap();
        let mut db = CodeDatabase::new(&spec, 2, 6);
        let c = Code::new("111000\n000111".parse().unwrap()).unwrap();
        assert!(db.insert(Record::from_code(&c).unwrap()));
        assert!(!db.insert(Record::from_code(&c).unwrap()));
        db.complete = true;
        let text = db.to_text();
        assert!(text.starts_with("CODEDB v1 n=6 k=2 W=3,6 flags=full\n"));
        let back = CodeDatabase::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        back.verify().unwrap();
    }

    #[test]
    fn rejects_tampered_records() {
        let spec = SearchSpec::new(1, 4, 4, [4]).unwrap();
        let mut db = CodeDatabase::new(&spec, 1, 4);
        db.insert(Record::from_code(&Code::new("1111".parse().unwrap()).unwrap()).unwrap());
        let text = db.to_text().replace("0:1 4:1", "0:1 3:1");
        assert!(CodeDatabase::parse(&text).is_err() || CodeDatabase::parse(&text).unwrap().verify().is_err());
        assert!(CodeDatabase::parse("CODEDB v2 n=1").is_err());
    }
}
