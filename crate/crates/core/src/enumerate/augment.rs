//! Isomorph-free generation by canonical augmentation in the dimension.
//!
//! A `k`-dimensional full-support code is a multiset of points of
//! `PG(k-1, 2)`. Fix a point `e` of maximal multiplicity `t`; projecting the
//! other points along `e` gives a `[n - t, k - 1]` code whose weights are a
//! subset of the original ones. Conversely every child of a parent `P` is
//! obtained by lifting each point `q` of `P` with multiplicity `mu` into
//! `mu - s` copies of `(q, 0)` and `s` copies of `(q, 1)` and adding `t`
//! copies of `e = (0, 1)`. A child is kept only when `e` lies in the
//! automorphism orbit of its canonical point, so each class is produced
//! from exactly one parent class.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::db::{CodeDatabase, Record};
use super::spec::SearchSpec;
use crate::canon::{canonical_form_with_budget, point_keys, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code};
use crate::lp::{build_mw_lp, ExtraConstraint, Status};

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Directory for per-(k, n) database files; enables checkpoint/resume.
    pub workdir: Option<PathBuf>,
    /// Abort with a checkpoint once this many search nodes have been visited.
    pub work_budget: Option<u64>,
    /// Node cap for each canonical labelling.
    pub canon_budget: u64,
    /// Skip lengths whose MacWilliams LP is infeasible.
    pub lp_prefilter: bool,
    /// Parents per checkpoint unit.
    pub chunk: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            workdir: None,
            work_budget: None,
            canon_budget: DEFAULT_NODE_BUDGET,
            lp_prefilter: true,
            chunk: 256,
        }
    }
}

/// Databases for every `(k, n)` visited by a search.
#[derive(Clone, Debug, Default)]
pub struct Classification {
    pub databases: BTreeMap<(usize, usize), CodeDatabase>,
}

impl Classification {
    pub fn get(&self, k: usize, n: usize) -> Option<&CodeDatabase> {
        self.databases.get(&(k, n))
    }

    /// Number of classes per length at dimension `k`.
    pub fn counts(&self, k: usize) -> BTreeMap<usize, usize> {
        self.databases
            .iter()
            .filter(|((kk, _), _)| *kk == k)
            .map(|((_, n), db)| (*n, db.len()))
            .collect()
    }

    pub fn count(&self, k: usize, n: usize) -> usize {
        self.get(k, n).map_or(0, |d| d.len())
    }
}

struct Ctx<'a> {
    spec: &'a SearchSpec,
    opts: &'a ClassifyOptions,
    work: AtomicU64,
}

/// Classifies all codes of `spec` for every length in its range.
///
/// `seeds`, when given, are complete databases at dimension `spec.k - 1`
/// used as parents instead of recomputing lower dimensions.
pub fn classify(spec: &SearchSpec, seeds: &[CodeDatabase], opts: &ClassifyOptions) -> Result<Classification> {
    spec.validate()?;
    let ctx = Ctx {
        spec,
        opts,
        work: AtomicU64::new(0),
    };
    let mut out = Classification::default();
    let mut start = 1;
    if !seeds.is_empty() {
        for s in seeds {
            if s.k + 1 != spec.k {
                return Err(Error::InvalidSpec(format!(
                    "seed dimension {} does not precede target dimension {}",
                    s.k, spec.k
                )));
            }
            out.databases.insert((s.k, s.n), s.clone());
        }
        start = spec.k;
    }
    if let Some(dir) = &opts.workdir {
        std::fs::create_dir_all(dir).map_err(|e| Error::Database(format!("{}: {e}", dir.display())))?;
    }
    for j in start..=spec.k {
        let lo = spec.min_length(j).max(j);
        let hi = spec.n_max - (spec.k - j).min(spec.n_max);
        for n in lo..=hi {
            let db = if j == 1 {
                dimension_one(spec, n)?
            } else {
                extend_at(&ctx, &out, j, n)?
            };
            out.databases.insert((j, n), db);
        }
    }
    finish(spec, &mut out)?;
    Ok(out)
}

/// Children at length `n` of the given dimension-`(k-1)` parents.
pub fn extend_dimension(parents: &[CodeDatabase], spec: &SearchSpec, n: usize, opts: &ClassifyOptions) -> Result<CodeDatabase> {
    spec.validate()?;
    let ctx = Ctx {
        spec,
        opts,
        work: AtomicU64::new(0),
    };
    let mut dbs = Classification::default();
    for p in parents {
        dbs.databases.insert((p.k, p.n), p.clone());
    }
    let mut db = extend_at(&ctx, &dbs, spec.k, n)?;
    if spec.projective {
        db = filter_projective(spec, db)?;
    }
    Ok(db)
}

fn dimension_one(spec: &SearchSpec, n: usize) -> Result<CodeDatabase> {
    let mut db = CodeDatabase::new(spec, 1, n);
    if spec.allowed(n).contains(&n) {
        let code = Code::new(BitMatrix::from_columns(1, &vec![1; n])?)?;
        db.insert(Record::from_code(&code)?);
    }
    db.complete = true;
    Ok(db)
}

/// Applies zero-column padding and projectivity at the target dimension and
/// drops lengths outside the requested range.
fn finish(spec: &SearchSpec, out: &mut Classification) -> Result<()> {
    let k = spec.k;
    if !spec.full_support {
        let full: Vec<(usize, CodeDatabase)> = out
            .databases
            .iter()
            .filter(|((kk, _), _)| *kk == k)
            .map(|((_, n), d)| (*n, d.clone()))
            .collect();
        for n in spec.n_min..=spec.n_max {
            let mut db = CodeDatabase::new(spec, k, n);
            for (_, d) in full.iter().filter(|(m, _)| *m <= n) {
                for r in d.records() {
                    let mut cols = r.code.generator().columns();
                    cols.resize(n, 0);
                    db.insert(Record::from_code(&Code::new(BitMatrix::from_columns(k, &cols)?)?)?);
                }
            }
            db.complete = true;
            out.databases.insert((k, n), db);
        }
    }
    let keys: Vec<(usize, usize)> = out.databases.keys().copied().filter(|(kk, _)| *kk == k).collect();
    for key in keys {
        if key.1 < spec.n_min {
            out.databases.remove(&key);
            continue;
        }
        if spec.projective {
            let db = out.databases.remove(&key).expect("listed");
            out.databases.insert(key, filter_projective(spec, db)?);
        }
    }
    for n in spec.n_min..=spec.n_max {
        out.databases.entry((k, n)).or_insert_with(|| {
            let mut d = CodeDatabase::new(spec, k, n);
            d.complete = true;
            d
        });
    }
    Ok(())
}

fn filter_projective(spec: &SearchSpec, db: CodeDatabase) -> Result<CodeDatabase> {
    let mut out = CodeDatabase::new(spec, db.k, db.n);
    for r in db.records() {
        if spec.at(db.k, db.n, db.n).accepts(&r.code)? {
            out.insert(r.clone());
        }
    }
    out.complete = db.complete;
    Ok(out)
}

/// LP relaxation of the existence question for a `[n, k]` code under `spec`.
pub fn lp_feasible(spec: &SearchSpec, k: usize, n: usize) -> Result<bool> {
    let allowed = spec.allowed(n);
    if allowed.is_empty() {
        return Ok(false);
    }
    let m = (n + 1).min(4);
    let mut extra = Vec::new();
    if spec.full_support && m > 1 {
        extra.push(ExtraConstraint::fix("B1", 0));
    }
    if spec.projective && m > 2 {
        extra.push(ExtraConstraint::fix("B2", 0));
    }
    let lp = build_mw_lp(n, k, &allowed, m, &extra, None)?;
    Ok(lp.solve().status != Status::Infeasible)
}

fn extend_at(ctx: &Ctx, dbs: &Classification, k: usize, n: usize) -> Result<CodeDatabase> {
    let spec = ctx.spec;
    let path = ctx
        .opts
        .workdir
        .as_ref()
        .map(|d| d.join(format!("k{k}_n{n}.codedb")));
    let mut db = match &path {
        Some(p) if p.exists() => CodeDatabase::read(p)?,
        _ => CodeDatabase::new(spec, k, n),
    };
    if db.complete {
        return Ok(db);
    }
    if let Some(p) = &path {
        if !p.exists() {
            CodeDatabase::append(p, &[db.header()])?;
        }
    }
    let feasible = !ctx.opts.lp_prefilter || lp_feasible(spec, k, n)?;
    let mut parents: Vec<(&Code, usize)> = Vec::new();
    if feasible {
        let points = (1usize << k) - 1;
        for t in n.div_ceil(points).max(1)..=n.saturating_sub(k - 1) {
            if let Some(pdb) = dbs.get(k - 1, n - t) {
                parents.extend(pdb.records().map(|r| (&r.code, t)));
            }
        }
    }
    let start = db.checkpoint.unwrap_or(0).min(parents.len());
    let mut done = start;
    for chunk in parents[start..].chunks(ctx.opts.chunk.max(1)) {
        let found: Vec<Vec<Record>> = chunk
            .par_iter()
            .map(|&(p, t)| children(ctx, p, t, n))
            .collect::<Result<_>>()?;
        let mut lines = Vec::new();
        for r in found.into_iter().flatten() {
            let line = r.to_line();
            if db.insert(r) {
                lines.push(line);
            }
        }
        done += chunk.len();
        db.checkpoint = Some(done);
        if let Some(p) = &path {
            lines.push(format!("#checkpoint {done}"));
            CodeDatabase::append(p, &lines)?;
        }
        if let Some(limit) = ctx.opts.work_budget {
            if ctx.work.load(Ordering::Relaxed) >= limit && done < parents.len() {
                return Err(Error::BudgetExceeded { limit });
            }
        }
    }
    db.complete = true;
    db.checkpoint = None;
    if let Some(p) = &path {
        CodeDatabase::append(p, &["#complete".to_string()])?;
    }
    Ok(db)
}

/// Cheap necessary condition for acceptance: `e` must carry the least
/// point key, as the canonical point does.
fn new_point_is_least(cols: &[u64], e: u64, k: usize) -> bool {
    let mut sorted = cols.to_vec();
    sorted.sort_unstable();
    let mut points = Vec::new();
    let mut mult = Vec::new();
    for c in sorted {
        if points.last() == Some(&c) {
            *mult.last_mut().expect("paired") += 1;
        } else {
            points.push(c);
            mult.push(1);
        }
    }
    let keys = point_keys(&points, &mult, k);
    let ei = points.binary_search(&e).expect("new point present");
    keys.iter().all(|key| keys[ei] <= *key)
}

/// In-place Walsh-Hadamard transform of a slice of length `2^j`.
fn walsh(v: &mut [i64]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (v[j], v[j + h]);
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// Accepted children of `parent` with `t` copies of the new point at length `n`.
///
/// With `s_q` copies of `(q, 1)` and `g(m) = w(m, 1) - w(m, 0)`, one has
/// `g(m) = sum_q (-1)^<m,q> s_q`. The weights `w(m, 1)` are chosen in message
/// order; once the first `2^j` are fixed, the transform of `g` over them equals
/// `2^j` times the sums of `s_q` over the classes of `q` modulo the low `j`
/// bits, which must be integral and within bounds.
fn children(ctx: &Ctx, parent: &Code, t: usize, n: usize) -> Result<Vec<Record>> {
    let k1 = parent.dim();
    let k = k1 + 1;
    let msgs = 1usize << k1;
    let mut mu = vec![0i64; msgs];
    for c in parent.generator().columns() {
        mu[c as usize] += 1;
    }
    let t = t as i64;
    let mut lo = vec![0i64; msgs];
    let mut hi = vec![0i64; msgs];
    for q in 1..msgs {
        lo[q] = (mu[q] - t).max(0);
        hi[q] = mu[q].min(t);
        if lo[q] > hi[q] {
            return Ok(Vec::new());
        }
    }
    lo[0] = t;
    hi[0] = t;
    let base: Vec<i64> = (0..msgs)
        .map(|m| parent.encode(m as u64).count_ones() as i64)
        .collect();
    // candidate g(m) values, from allowed weights and the range of sum (-1)^<m,q> s_q
    let allowed = ctx.spec.allowed(n);
    let cands: Vec<Vec<i64>> = (0..msgs)
        .map(|m| {
            let (mut glo, mut ghi) = (0, 0);
            for q in 0..msgs {
                if (m & q).count_ones() & 1 == 1 {
                    glo -= hi[q];
                    ghi -= lo[q];
                } else {
                    glo += lo[q];
                    ghi += hi[q];
                }
            }
            allowed
                .iter()
                .map(|&w| w as i64 - base[m])
                .filter(|g| (glo..=ghi).contains(g))
                .collect()
        })
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    // For each mask M: its submasks in compressed order and, per class of
    // q & M, the bounds on the class sum of s_q.
    let subspaces: Vec<(Vec<usize>, Vec<(i64, i64)>)> = (0..msgs)
        .map(|mask| {
            let bits: Vec<usize> = (0..k1).filter(|b| mask >> b & 1 == 1).collect();
            let deposit = |x: usize| bits.iter().enumerate().fold(0, |a, (i, &b)| a | ((x >> i & 1) << b));
            let subs: Vec<usize> = (0..1usize << bits.len()).map(deposit).collect();
            let mut bounds = vec![(0i64, 0i64); subs.len()];
            for q in 0..msgs {
                let c = bits.iter().enumerate().fold(0, |a, (i, &b)| a | ((q >> b & 1) << i));
                bounds[c].0 += lo[q];
                bounds[c].1 += hi[q];
            }
            (subs, bounds)
        })
        .collect();
    // checks the subspace of submasks of `mask`, all of which are assigned
    let consistent = |g: &[i64], mask: usize, scratch: &mut Vec<i64>| -> bool {
        let (subs, bounds) = &subspaces[mask];
        scratch.clear();
        scratch.extend(subs.iter().map(|&m| g[m]));
        walsh(scratch);
        let size = subs.len() as i64;
        scratch
            .iter()
            .zip(bounds)
            .all(|(&v, &(l, h))| v % size == 0 && (l..=h).contains(&(v / size)))
    };

    let e = 1u64 << k1;
    let mut out: BTreeMap<Vec<u8>, Record> = BTreeMap::new();
    let mut nodes = 0u64;
    let mut g = vec![0i64; msgs];
    let mut idx = vec![0usize; msgs];
    let mut scratch = Vec::with_capacity(msgs);
    let mut d = 0usize;
    let mut fresh = true;
    loop {
        if fresh {
            idx[d] = 0;
        } else {
            idx[d] += 1;
        }
        if idx[d] == cands[d].len() {
            if d == 0 {
                break;
            }
            d -= 1;
            fresh = false;
            continue;
        }
        g[d] = cands[d][idx[d]];
        nodes += 1;
        if !consistent(&g, d, &mut scratch) {
            fresh = false;
            continue;
        }
        if d + 1 < msgs {
            d += 1;
            fresh = true;
            continue;
        }
        // the transform now gives every s_q
        let size = msgs as i64;
        let mut ccols = Vec::with_capacity(n);
        for (q, &v) in scratch.iter().enumerate().skip(1) {
            let sq = (v / size) as usize;
            let m = mu[q] as usize;
            ccols.extend(std::iter::repeat_n(q as u64, m - sq));
            ccols.extend(std::iter::repeat_n(q as u64 | e, sq));
        }
        ccols.extend(std::iter::repeat_n(e, t as usize));
        fresh = false;
        if !new_point_is_least(&ccols, e, k) {
            continue;
        }
        let child = Code::new(BitMatrix::from_columns(k, &ccols)?)?;
        let f = canonical_form_with_budget(&child, ctx.opts.canon_budget)?;
        let ei = f.point_index(e).expect("new point present");
        let star = f.canonical_point().expect("nonempty");
        if f.same_orbit(ei, star) && !out.contains_key(f.certificate.bytes()) {
            let weights = f.code.weight_distribution()?.clone();
            out.insert(
                f.certificate.bytes().to_vec(),
                Record {
                    certificate: f.certificate,
                    code: f.code,
                    weights,
                },
            );
        }
    }
    ctx.work.fetch_add(nodes, Ordering::Relaxed);
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_compositions() {
        // [n,2] codes with weights in W: multiplicities (a,b,c) with a+b, a+c, b+c in W
        let spec = SearchSpec::new(2, 30, 38, [20, 24, 28, 32]).unwrap();
        let c = classify(&spec, &[], &ClassifyOptions::default()).unwrap();
        let counts: Vec<usize> = (30..=38).map(|n| c.count(2, n)).collect();
        assert_eq!(counts, vec![1, 0, 1, 0, 2, 0, 3, 0, 3]);
    }

    #[test]
    fn simplex_family() {
        // the only [7,3] code with all weights 4 is the simplex code
        let spec = SearchSpec::new(3, 7, 7, [4]).unwrap();
        let c = classify(&spec, &[], &ClassifyOptions::default()).unwrap();
        assert_eq!(c.count(3, 7), 1);
        let r = c.get(3, 7).unwrap().records().next().unwrap();
        assert_eq!(r.certificate.aut_order(), &num_bigint::BigUint::from(168u32));
    }

    #[test]
    fn non_full_support_pads_shorter_codes() {
        let spec = SearchSpec::new(1, 3, 5, [3]).unwrap().full_support(false);
        let c = classify(&spec, &[], &ClassifyOptions::default()).unwrap();
        assert_eq!(c.counts(1), [(3, 1), (4, 1), (5, 1)].into_iter().collect());
    }
}
