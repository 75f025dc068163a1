//! Named reproductions of published claims, each reporting expected versus
//! computed values.
//!
//! Expected values and their citations live in `data/expected.toml`; the
//! nonexistence facts a check relies on come from `data/axioms.toml`.
//! Checks are tiered by cost: 0 runs in seconds, 1 in minutes, 2 in hours,
//! 3 is unbounded.

mod checks;
mod counting;
mod data;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

pub use counting::{
    format_affine, residual_counting_argument, residual_counts_in_terms_of, CountingOutcome, ResidualConstraints,
    ResidualPattern,
};
pub use data::{axioms, expected, Axiom, CheckSpec, Expectation};

use crate::enumerate::ClassifyOptions;
use crate::error::{Error, Result};

pub const DEFAULT_TIER: u8 = 1;

/// Registered check ids in report order.
pub const CHECK_IDS: [&str; 14] = [
    "L1", "L2-CODE", "T3", "L4", "L5", "L6", "L7", "L78", "T5-LP", "T5-COUNT", "T117", "P118", "TAB1", "TAB2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub cite: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub tier: u8,
    pub claim: String,
    pub status: CheckStatus,
    pub items: Vec<CheckItem>,
    /// Expected values not evaluated at the selected tier.
    pub deferred: Vec<String>,
    pub notes: Vec<String>,
    pub axioms: Vec<Axiom>,
    /// SHA-256 of the check's inputs, hex.
    pub digest: String,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.ok)
    }

    /// `CHECK <id> <pass|fail|skip> <details>`.
    pub fn machine_line(&self) -> String {
        let details = match self.status {
            CheckStatus::Skip => format!("tier {} not selected", self.tier),
            CheckStatus::Pass => format!("items={} digest={}", self.items.len(), &self.digest[..16]),
            CheckStatus::Fail => self
                .mismatches()
                .map(|i| format!("{}: expected {:?} computed {:?}", i.key, i.expected, i.computed))
                .collect::<Vec<_>>()
                .join("; "),
        };
        format!("CHECK {} {} {}", self.id, self.status.as_str(), details)
    }

    /// Multi-line human-readable report; wall time only when asked, so
    /// that reports of repeated runs compare equal.
    pub fn render(&self, timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[{}] {} (tier {}) {}", self.id, self.status.as_str(), self.tier, self.claim);
        if self.status == CheckStatus::Skip {
            return s;
        }
        for i in &self.items {
            if i.ok {
                let _ = writeln!(s, "  ok   {:<22} {}", i.key, i.computed);
            } else {
                let _ = writeln!(s, "  FAIL {:<22} expected {} computed {}", i.key, i.expected, i.computed);
            }
            let _ = writeln!(s, "       {:<22} cite: {}", "", i.cite);
        }
        for d in &self.deferred {
            let _ = writeln!(s, "  skip {d}");
        }
        for a in &self.axioms {
            let _ = writeln!(s, "  axiom {}: {} ({})", a.id, a.statement, a.source);
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        let _ = writeln!(s, "  inputs sha256 {}", self.digest);
        if timings {
            let _ = writeln!(s, "  wall time {:.3}s", self.elapsed.as_secs_f64());
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub tier: u8,
    pub classify: ClassifyOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tier: DEFAULT_TIER,
            classify: ClassifyOptions::default(),
        }
    }
}

/// Collects items, notes, axioms and digest input for one check.
pub(crate) struct Recorder<'a> {
    spec: &'a CheckSpec,
    tier: u8,
    axiom_ledger: std::collections::BTreeMap<String, Axiom>,
    items: Vec<CheckItem>,
    deferred: Vec<String>,
    notes: Vec<String>,
    axioms: Vec<Axiom>,
    hasher: Sha256,
}

impl<'a> Recorder<'a> {
    fn new(spec: &'a CheckSpec, tier: u8) -> Result<Self> {
        let mut hasher = Sha256::new();
        hasher.update(spec.id.as_bytes());
        Ok(Self {
            spec,
            tier,
            axiom_ledger: axioms()?,
            items: Vec::new(),
            deferred: Vec::new(),
            notes: Vec::new(),
            axioms: Vec::new(),
            hasher,
        })
    }

    /// Whether the expected value `key` is evaluated at the selected tier.
    pub fn wants(&self, key: &str) -> Result<bool> {
        let e = self.spec.expectation(key)?;
        Ok(e.tier.unwrap_or(self.spec.tier) <= self.tier)
    }

    /// Compares a computed value with the expected one.
    pub fn value(&mut self, key: &str, computed: impl ToString) -> Result<()> {
        let e = self.spec.expectation(key)?;
        let computed = computed.to_string();
        self.items.push(CheckItem {
            key: key.to_string(),
            ok: computed == e.value,
            expected: e.value.clone(),
            computed,
            cite: e.cite.clone(),
        });
        Ok(())
    }

    pub fn defer(&mut self, key: &str) -> Result<()> {
        let e = self.spec.expectation(key)?;
        let tier = e.tier.unwrap_or(self.spec.tier);
        self.deferred.push(format!("{key} (tier {tier})"));
        Ok(())
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn input(&mut self, text: &str) {
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
    }

    /// Registers a ledger axiom the check depends on.
    pub fn axiom(&mut self, id: &str) -> Result<()> {
        let a = self
            .axiom_ledger
            .get(id)
            .ok_or_else(|| Error::Data(format!("check {} needs axiom {id:?}, absent from the ledger", self.spec.id)))?
            .clone();
        if !self.axioms.contains(&a) {
            self.input(&a.id);
            self.axioms.push(a);
        }
        Ok(())
    }

    /// Registers the nonexistence of an `[n, k, d]` code.
    pub fn no_code(&mut self, n: usize, k: usize, d: usize) -> Result<()> {
        self.axiom(&format!("no-{n}-{k}-{d}"))
    }

    fn finish(self, elapsed: Duration) -> CheckReport {
        let status = if self.items.iter().all(|i| i.ok) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckReport {
            id: self.spec.id.clone(),
            tier: self.spec.tier,
            claim: self.spec.claim.clone(),
            status,
            items: self.items,
            deferred: self.deferred,
            notes: self.notes,
            axioms: self.axioms,
            digest: hex::encode(self.hasher.finalize()),
            elapsed,
        }
    }
}

fn skipped(spec: &CheckSpec) -> CheckReport {
    CheckReport {
        id: spec.id.clone(),
        tier: spec.tier,
        claim: spec.claim.clone(),
        status: CheckStatus::Skip,
        items: Vec::new(),
        deferred: Vec::new(),
        notes: Vec::new(),
        axioms: Vec::new(),
        digest: hex::encode(Sha256::digest(spec.id.as_bytes())),
        elapsed: Duration::ZERO,
    }
}

/// Runs one registered check.
pub fn verify(id: &str, opts: &VerifyOptions) -> Result<CheckReport> {
    let specs = expected()?;
    let spec = specs
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    if spec.tier > opts.tier {
        return Ok(skipped(spec));
    }
    let start = Instant::now();
    let mut rec = Recorder::new(spec, opts.tier)?;
    checks::run(id, &mut rec, opts)?;
    Ok(rec.finish(start.elapsed()))
}

/// Runs every registered check in registry order.
pub fn verify_all(opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    CHECK_IDS.iter().map(|id| verify(id, opts)).collect()
}
