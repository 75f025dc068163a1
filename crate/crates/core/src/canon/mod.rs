//! Code equivalence under coordinate permutations.
//!
//! A code is reduced to the multiset of its distinct nonzero columns plus a
//! count of zero columns. Two codes are permutation equivalent exactly when
//! some invertible change of basis maps one column multiset onto the other,
//! so canonical labelling works on the incidence structure between those
//! columns and the nonzero codewords, coloured by multiplicity and weight.

mod search;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code};

use search::{leaf_coordinates, orbit_ids, Graph, Partition, Searcher};

/// Largest dimension accepted by the canonical labelling.
pub const MAX_CANON_DIM: usize = 16;

/// Default cap on search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Canonical encoding of an equivalence class together with the order of
/// the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    bytes: Vec<u8>,
    aut_order: BigUint,
}

impl Certificate {
    pub fn new(bytes: Vec<u8>, aut_order: BigUint) -> Self {
        Self { bytes, aut_order }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn aut_order(&self) -> &BigUint {
        &self.aut_order
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    pub fn from_hex(text: &str, aut_order: BigUint) -> Result<Self> {
        let bytes = hex::decode(text).map_err(|e| Error::Data(format!("bad certificate hex: {e}")))?;
        Ok(Self { bytes, aut_order })
    }

    /// Rebuilds the canonical representative encoded in the certificate.
    pub fn to_code(&self) -> Result<Code> {
        let bad = || Error::Data("truncated certificate".into());
        let (&n, rest) = self.bytes.split_first().ok_or_else(bad)?;
        let (&k, mut rest) = rest.split_first().ok_or_else(bad)?;
        let (n, k) = (n as usize, k as usize);
        let width = k.div_ceil(8);
        let mut cols = Vec::with_capacity(n);
        while !rest.is_empty() {
            if rest.len() < width + 1 {
                return Err(bad());
            }
            let mut v = 0u64;
            for (i, &b) in rest[..width].iter().enumerate() {
                v |= (b as u64) << (8 * i);
            }
            cols.extend(std::iter::repeat_n(v, rest[width] as usize));
            rest = &rest[width + 1..];
        }
        if cols.len() > n {
            return Err(bad());
        }
        cols.resize(n, 0);
        Code::new(BitMatrix::from_columns(k, &cols)?)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Full output of the canonical labelling.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: Certificate,
    /// Canonical representative.
    pub code: Code,
    /// Distinct nonzero columns of the input, ascending.
    pub points: Vec<u64>,
    pub multiplicity: Vec<usize>,
    pub zero_columns: usize,
    /// Point indices in canonical order.
    pub order: Vec<usize>,
    /// Orbit representative of every point under the automorphism group.
    pub point_orbits: Vec<usize>,
    /// Generators of the induced action on points.
    pub generators: Vec<Vec<usize>>,
    /// Input column indices in canonical order; `code` equals the input
    /// permuted by this list, up to a change of basis.
    pub column_order: Vec<usize>,
}

impl CanonicalForm {
    /// The first point of maximal multiplicity in canonical order.
    pub fn canonical_point(&self) -> Option<usize> {
        let max = self.multiplicity.iter().copied().max()?;
        self.order.iter().copied().find(|&p| self.multiplicity[p] == max)
    }

    pub fn point_index(&self, value: u64) -> Option<usize> {
        self.points.binary_search(&value).ok()
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.point_orbits[a] == self.point_orbits[b]
    }
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Initial colour of each point: descending multiplicity, then a hash of the
/// weights of the codewords that are odd on it. The canonical point always
/// carries the least key.
pub(crate) fn point_keys(points: &[u64], multiplicity: &[usize], k: usize) -> Vec<(usize, u64)> {
    let q = 1u64 << k;
    let weight: Vec<usize> = (0..q)
        .map(|m| {
            points
                .iter()
                .zip(multiplicity)
                .filter(|(&p, _)| (p & m).count_ones() & 1 == 1)
                .map(|(_, &mu)| mu)
                .sum()
        })
        .collect();
    let max_mult = multiplicity.iter().copied().max().unwrap_or(0);
    points
        .iter()
        .zip(multiplicity)
        .map(|(&p, &mu)| {
            let mut ws: Vec<usize> = (1..q)
                .filter(|&m| (p & m).count_ones() & 1 == 1)
                .map(|m| weight[m as usize])
                .collect();
            ws.sort_unstable();
            (max_mult - mu, ws.iter().fold(0u64, |h, &w| search::mix(h, w as u64)))
        })
        .collect()
}

/// Canonical labelling with an explicit node budget.
pub fn canonical_form_with_budget(code: &Code, budget: u64) -> Result<CanonicalForm> {
    let (n, k) = (code.len(), code.dim());
    if k > MAX_CANON_DIM {
        return Err(Error::DimensionOverBudget { k, max: MAX_CANON_DIM });
    }
    let columns = code.generator().columns();
    let mut points: Vec<u64> = columns.iter().copied().filter(|&c| c != 0).collect();
    points.sort_unstable();
    points.dedup();
    let np = points.len();
    let mut multiplicity = vec![0usize; np];
    let mut columns_of: Vec<Vec<usize>> = vec![Vec::new(); np];
    let mut zeros = Vec::new();
    for (j, &c) in columns.iter().enumerate() {
        if c == 0 {
            zeros.push(j);
        } else {
            let p = points.binary_search(&c).expect("collected");
            multiplicity[p] += 1;
            columns_of[p].push(j);
        }
    }

    let graph = Graph::new(&points, k);
    let keys = point_keys(&points, &multiplicity, k);
    let mut ranked = keys.clone();
    ranked.sort_unstable();
    ranked.dedup();
    let mut colours: Vec<u64> = keys
        .iter()
        .map(|key| ranked.binary_search(key).expect("ranked") as u64)
        .collect();
    let base = ranked.len() as u64;
    for m in 1..(1u64 << k) {
        let w: usize = points
            .iter()
            .zip(&multiplicity)
            .filter(|(&p, _)| (p & m).count_ones() & 1 == 1)
            .map(|(_, &mu)| mu)
            .sum();
        colours.push(base + w as u64);
    }
    let root = Partition::from_colours(&colours);
    let outcome = Searcher::new(&graph, &points, &multiplicity, k, budget).run(root)?;

    let order = outcome.best.order;
    let coords = leaf_coordinates(&points, &order, k);
    let width = k.div_ceil(8);
    let mut bytes = vec![n as u8, k as u8];
    let mut canon_cols = Vec::with_capacity(n);
    let mut column_order = Vec::with_capacity(n);
    for (&p, &c) in order.iter().zip(&coords) {
        bytes.extend_from_slice(&c.to_le_bytes()[..width]);
        bytes.push(multiplicity[p] as u8);
        canon_cols.extend(std::iter::repeat_n(c, multiplicity[p]));
        column_order.extend_from_slice(&columns_of[p]);
    }
    canon_cols.resize(n, 0);
    column_order.extend_from_slice(&zeros);

    let gl_order: BigUint = outcome
        .orbit_sizes
        .iter()
        .fold(BigUint::one(), |acc, &s| acc * s);
    let aut_order = multiplicity
        .iter()
        .fold(gl_order * factorial(zeros.len()), |acc, &m| acc * factorial(m));
    let canonical = Code::new(BitMatrix::from_columns(k, &canon_cols)?)?;
    Ok(CanonicalForm {
        certificate: Certificate { bytes, aut_order },
        code: canonical,
        point_orbits: orbit_ids(np, &outcome.generators),
        generators: outcome.generators,
        points,
        multiplicity,
        zero_columns: zeros.len(),
        order,
        column_order,
    })
}

pub fn canonical_form(code: &Code) -> Result<CanonicalForm> {
    canonical_form_with_budget(code, DEFAULT_NODE_BUDGET)
}

/// Certificate and canonical representative.
pub fn canonicalize(code: &Code) -> Result<(Certificate, Code)> {
    let f = canonical_form(code)?;
    let _ = code.certificate_cell().set(f.certificate.clone());
    Ok((f.certificate, f.code))
}

/// The certificate of `code`, cached on the code.
pub fn certificate(code: &Code) -> Result<Certificate> {
    if let Some(c) = code.certificate_cell().get() {
        return Ok(c.clone());
    }
    let c = canonical_form(code)?.certificate;
    let _ = code.certificate_cell().set(c.clone());
    Ok(c)
}

/// Order of the group of coordinate permutations fixing the code.
pub fn automorphism_order(code: &Code) -> Result<BigUint> {
    Ok(certificate(code)?.aut_order)
}

/// A coordinate permutation `perm` with `a.permute(perm)` equal to `b` as a
/// code, or `None` when the codes are inequivalent.
pub fn equivalence_witness(a: &Code, b: &Code) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return Ok(None);
    }
    if let (Ok(wa), Ok(wb)) = (a.weight_distribution(), b.weight_distribution()) {
        if wa != wb {
            return Ok(None);
        }
    }
    let fa = canonical_form(a)?;
    let fb = canonical_form(b)?;
    if fa.certificate.bytes != fb.certificate.bytes {
        return Ok(None);
    }
    let n = a.len();
    let mut inv_b = vec![0; n];
    for (i, &j) in fb.column_order.iter().enumerate() {
        inv_b[j] = i;
    }
    let perm: Vec<usize> = (0..n).map(|i| fa.column_order[inv_b[i]]).collect();
    if !a.permute(&perm).same_row_space(b) {
        return Err(Error::Data("equivalence witness failed verification".into()));
    }
    Ok(Some(perm))
}

pub fn equivalent(a: &Code, b: &Code) -> Result<bool> {
    Ok(equivalence_witness(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn code(rows: &[&str]) -> Code {
        Code::new(rows.join("\n").parse().unwrap()).unwrap()
    }

    fn simplex3() -> Code {
        code(&["1010101", "0110011", "0001111"])
    }

    fn brute_aut(c: &Code) -> usize {
        // all n! permutations, n <= 7
        let n = c.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if c.permute(&perm).same_row_space(c) {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn simplex_group() {
        let c = simplex3();
        assert_eq!(brute_aut(&c), 168);
        assert_eq!(automorphism_order(&c).unwrap(), BigUint::from(168u32));
    }

    #[test]
    fn small_groups_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = 3 + (rand::Rng::gen_range(&mut rng, 0..5));
            let k = 1 + rand::Rng::gen_range(&mut rng, 0..n.min(4));
            let c = Code::random(&mut rng, n, k).unwrap();
            assert_eq!(
                automorphism_order(&c).unwrap(),
                BigUint::from(brute_aut(&c)),
                "{c:?}"
            );
        }
    }

    #[test]
    fn invariant_under_reencoding() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let c = Code::random(&mut rng, 14, 4).unwrap();
            let (cert, canon) = canonicalize(&c).unwrap();
            let mut perm: Vec<usize> = (0..14).collect();
            perm.shuffle(&mut rng);
            let d = c.permute(&perm).random_basis_change(&mut rng);
            let (cert2, canon2) = canonicalize(&d).unwrap();
            assert_eq!(cert, cert2);
            assert_eq!(canon.generator(), canon2.generator());
            assert!(canon.same_row_space(&cert.to_code().unwrap()));
            let w = equivalence_witness(&c, &d).unwrap().unwrap();
            assert!(c.permute(&w).same_row_space(&d));
        }
    }

    #[test]
    fn canonical_code_is_equivalent_to_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Code::random(&mut rng, 20, 5).unwrap();
        let f = canonical_form(&c).unwrap();
        assert!(c.permute(&f.column_order).same_row_space(&f.code));
    }

    #[test]
    fn distinguishes_classes() {
        let a = code(&["1111"]);
        let b = code(&["1110"]);
        assert!(!equivalent(&a, &b).unwrap());
        assert!(equivalent(&a, &a).unwrap());
        assert_eq!(automorphism_order(&b).unwrap(), BigUint::from(6u32));
        // same weight distribution, different column multisets
        let c = code(&["110000", "001100"]);
        let d = code(&["110000", "011000"]);
        assert!(!equivalent(&c, &d).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c = simplex3();
        assert!(matches!(
            canonical_form_with_budget(&c, 1),
            Err(Error::BudgetExceeded { limit: 1 })
        ));
    }
}
