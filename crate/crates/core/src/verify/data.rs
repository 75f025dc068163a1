use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

const EXPECTED: &str = include_str!("../../data/expected.toml");
const AXIOMS: &str = include_str!("../../data/axioms.toml");
pub(crate) const LEMMA2_GENERATOR: &str = include_str!("../../data/lemma2.gen");

#[derive(Clone, Debug, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub cite: String,
    pub tier: Option<u8>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CheckSpec {
    pub id: String,
    pub tier: u8,
    pub claim: String,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

impl CheckSpec {
    pub fn expectation(&self, key: &str) -> Result<&Expectation> {
        self.expect
            .iter()
            .find(|e| e.key == key)
            .ok_or_else(|| Error::Data(format!("no expected value {key:?} for check {}", self.id)))
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub statement: String,
    pub source: String,
}

#[derive(Deserialize)]
struct ExpectedFile {
    check: Vec<CheckSpec>,
}

#[derive(Deserialize)]
struct AxiomFile {
    axiom: Vec<Axiom>,
}

/// Expected values of every registered check, in registry order.
pub fn expected() -> Result<Vec<CheckSpec>> {
    let f: ExpectedFile = toml::from_str(EXPECTED).map_err(|e| Error::Data(format!("expected.toml: {e}")))?;
    Ok(f.check)
}

pub fn axioms() -> Result<BTreeMap<String, Axiom>> {
    let f: AxiomFile = toml::from_str(AXIOMS).map_err(|e| Error::Data(format!("axioms.toml: {e}")))?;
    let mut out = BTreeMap::new();
    for a in f.axiom {
        if out.insert(a.id.clone(), a.clone()).is_some() {
            return Err(Error::Data(format!("axiom {} listed twice", a.id)));
        }
    }
    Ok(out)
}
