//! Direct enumeration for `k <= 3`, sharing no search logic with the
//! augmentation code.
//!
//! For a full-support code the column multiplicities `mu_p` and the
//! codeword weights `w_m` determine each other:
//! `mu_p = 2^-k (n + sum_{m != 0} (-1)^{<m,p>} (n - 2 w_m))`.
//! So every assignment of allowed weights to the nonzero messages with
//! `sum w_m = n 2^(k-1)` is tested for a nonnegative integral inverse, and
//! solutions are identified up to `GL(k, 2)` by their lexicographically
//! least image.

use std::collections::{BTreeMap, BTreeSet};

use super::db::{CodeDatabase, Record};
use super::spec::SearchSpec;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code};

pub const ORACLE_MAX_DIM: usize = 3;

/// All invertible `k x k` matrices over GF(2), as column lists.
fn general_linear(k: usize) -> Vec<Vec<u64>> {
    let q = 1u64 << k;
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(k);
    fn rec(k: usize, q: u64, cols: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cols.len() == k {
            out.push(cols.clone());
            return;
        }
        'next: for v in 1..q {
            // reject v in the span of the chosen columns
            for mask in 0..(1u64 << cols.len()) {
                let s = cols
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |a, (_, &c)| a ^ c);
                if s == v {
                    continue 'next;
                }
            }
            cols.push(v);
            rec(k, q, cols, out);
            cols.pop();
        }
    }
    rec(k, q, &mut cols, &mut out);
    out
}

fn apply(g: &[u64], p: u64) -> u64 {
    g.iter()
        .enumerate()
        .filter(|(i, _)| p >> i & 1 == 1)
        .fold(0, |a, (_, &c)| a ^ c)
}

fn parity(x: u64) -> i64 {
    if x.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One database per length of `spec` (full support only, `k <= 3`).
pub fn brute_oracle(spec: &SearchSpec) -> Result<BTreeMap<usize, CodeDatabase>> {
    spec.validate()?;
    let k = spec.k;
    if k > ORACLE_MAX_DIM {
        return Err(Error::DimensionOverBudget { k, max: ORACLE_MAX_DIM });
    }
    if !spec.full_support || spec.projective {
        return Err(Error::InvalidSpec("the oracle enumerates full-support codes only".into()));
    }
    let q = 1usize << k;
    let group = general_linear(k);
    let mut out = BTreeMap::new();
    for n in spec.n_min..=spec.n_max {
        let allowed = spec.allowed(n);
        let target = n << (k - 1);
        let mut classes: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut w = vec![0usize; q - 1];
        enumerate(&allowed, target, 0, 0, &mut w, &mut |w| {
            let mut mu = vec![0i64; q];
            for (p, slot) in mu.iter_mut().enumerate().skip(1) {
                let s: i64 = (1..q)
                    .map(|m| parity((m & p) as u64) * (n as i64 - 2 * w[m - 1] as i64))
                    .sum();
                let num = n as i64 + s;
                if num < 0 || num % q as i64 != 0 {
                    return;
                }
                *slot = num / q as i64;
            }
            let key = group
                .iter()
                .map(|g| {
                    let mut v = vec![0i64; q];
                    for (p, &m) in mu.iter().enumerate().skip(1) {
                        v[apply(g, p as u64) as usize] = m;
                    }
                    v
                })
                .min()
                .expect("group is nonempty");
            classes.insert(key);
        });
        let mut db = CodeDatabase::new(spec, k, n);
        for mu in classes {
            let cols: Vec<u64> = mu
                .iter()
                .enumerate()
                .flat_map(|(p, &m)| std::iter::repeat_n(p as u64, m as usize))
                .collect();
            let code = Code::new(BitMatrix::from_columns(k, &cols)?)?;
            if !db.insert(Record::from_code(&code)?) {
                return Err(Error::Data(format!(
                    "two GL-inequivalent [{n},{k}] codes share a certificate"
                )));
            }
        }
        db.complete = true;
        out.insert(n, db);
    }
    Ok(out)
}

fn enumerate(allowed: &[usize], target: usize, i: usize, sum: usize, w: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let left = w.len() - i;
    if left == 0 {
        if sum == target {
            f(w);
        }
        return;
    }
    let (Some(&lo), Some(&hi)) = (allowed.first(), allowed.last()) else {
        return;
    };
    for &a in allowed {
        let s = sum + a;
        if s + (left - 1) * lo > target {
            break;
        }
        if s + (left - 1) * hi < target {
            continue;
        }
        w[i] = a;
        enumerate(allowed, target, i + 1, s, w, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(general_linear(1).len(), 1);
        assert_eq!(general_linear(2).len(), 6);
        assert_eq!(general_linear(3).len(), 168);
    }

    #[test]
    fn table_one_small_rows() {
        let spec = SearchSpec::new(2, 30, 36, [20, 24, 28, 32]).unwrap();
        let dbs = brute_oracle(&spec).unwrap();
        let counts: Vec<usize> = dbs.values().map(|d| d.len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 0, 2, 0, 3]);
        let one = brute_oracle(&SearchSpec::new(1, 20, 21, [20]).unwrap()).unwrap();
        assert_eq!((one[&20].len(), one[&21].len()), (1, 0));
    }

    #[test]
    fn rejects_large_dimension() {
        let spec = SearchSpec::new(4, 8, 8, [4]).unwrap();
        assert!(brute_oracle(&spec).is_err());
    }
}
