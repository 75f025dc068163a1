use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gf2codes::canon::{automorphism_order, canonical_form_with_budget, certificate, equivalence_witness};
use gf2codes::enumerate::{
    classify, column_replacement_scan, extend_dimension, ClassifyOptions, CodeDatabase, SearchSpec,
};
use gf2codes::gf2::{BitMatrix, Code, Codeword};
use gf2codes::lp::{descending_weight_order, format_outcome, format_rational, parse_lp, tighten_integer, var_weight};
use gf2codes::spectrum::{griesmer, macwilliams};
use gf2codes::verify::{verify, CheckStatus, VerifyOptions, CHECK_IDS};
use gf2codes::Error;

use crate::config::CliConfig;
use crate::{Command, SpecArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse { .. }
            | Error::TooManyColumns { .. }
            | Error::RankDeficient { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidSpec(_)
            | Error::InvalidProgram(_)
            | Error::UnknownCheck(_)
            | Error::Database(_)
            | Error::NotACodeword
            | Error::ZeroWord => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

pub fn dispatch(cmd: &Command, cfg: &CliConfig, out: &mut impl Write) -> u8 {
    match run(cmd, cfg, out) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Budget(m) => (EXIT_BUDGET, m),
                Failure::Failed(m) => (EXIT_FAIL, m),
            };
            eprintln!("gf2codes: {msg}");
            code
        }
    }
}

fn read_code(path: &Path, cfg: &CliConfig) -> Result<Code, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let m: BitMatrix = text
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", path.display())))?;
    cfg.check_dims(m.nrows(), m.ncols()).map_err(Failure::Usage)?;
    Ok(Code::new(m)?)
}

fn classify_options(cfg: &CliConfig) -> ClassifyOptions {
    ClassifyOptions {
        workdir: cfg.db_dir.clone(),
        work_budget: cfg.work_budget,
        canon_budget: cfg.max_nodes,
        chunk: cfg.chunk,
        ..Default::default()
    }
}

/// `20,24,28` or `20..46:2`, items combined.
pub fn parse_weights(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("cannot read weight list {text:?}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let (lo, hi, step): (usize, usize, usize) = (
                lo.parse().map_err(|_| bad())?,
                hi.parse().map_err(|_| bad())?,
                step.parse().map_err(|_| bad())?,
            );
            if step == 0 {
                return Err(bad());
            }
            out.extend((lo..=hi).step_by(step));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn search_spec(a: &SpecArgs, cfg: &CliConfig) -> Result<SearchSpec, Failure> {
    cfg.check_dims(a.k, a.nmax).map_err(Failure::Usage)?;
    let forbid = a.forbid.as_deref().map(parse_weights).transpose()?.unwrap_or_default();
    let weights = match (&a.weights, a.min_distance) {
        (Some(w), _) => parse_weights(w)?,
        (None, Some(d)) => (d..=a.nmax).collect(),
        (None, None) => return Err(Failure::Usage("give --weights or --min-distance".into())),
    };
    let weights: Vec<usize> = weights.into_iter().filter(|w| !forbid.contains(w)).collect();
    Ok(SearchSpec::new(a.k, a.nmin, a.nmax, weights)?
        .divisible_by(a.divisor)
        .projective(a.projective)
        .full_support(!a.allow_zero_columns))
}

fn run(cmd: &Command, cfg: &CliConfig, out: &mut impl Write) -> Outcome {
    match cmd {
        Command::Wd { matrix } => {
            let c = read_code(matrix, cfg)?;
            writeln!(out, "{}", c.weight_distribution()?)?;
        }
        Command::Dual { matrix } => {
            let c = read_code(matrix, cfg)?;
            let d = macwilliams(c.weight_distribution()?);
            let pairs: Vec<String> = (0..=c.len())
                .filter(|&i| !is_zero(d.get(i)))
                .map(|i| format!("{i}:{}", format_rational(d.get(i))))
                .collect();
            writeln!(out, "{}", pairs.join(" "))?;
        }
        Command::Mindist { matrix } => {
            let c = read_code(matrix, cfg)?;
            writeln!(out, "{}", c.min_weight()?)?;
        }
        Command::Residual { matrix, codeword } => {
            let c = read_code(matrix, cfg)?;
            let w = Codeword::parse(codeword)?;
            let r = c.residual(w)?;
            let d = c.min_weight()?;
            let lower = d.saturating_sub(w.weight() / 2);
            if r.guaranteed {
                writeln!(out, "# [{}, {}, >={lower}]", r.code.len(), r.code.dim())?;
            } else {
                writeln!(out, "# [{}, {}] (weight {} >= 2d, no guarantee)", r.code.len(), r.code.dim(), w.weight())?;
            }
            write!(out, "{}", r.code.generator())?;
        }
        Command::Canon { matrix, check, seed } => {
            let c = read_code(matrix, cfg)?;
            let form = canonical_form_with_budget(&c, cfg.max_nodes)?;
            let cert = form.certificate.clone();
            writeln!(out, "# certificate {}", cert.to_hex())?;
            writeln!(out, "# aut {}", cert.aut_order())?;
            write!(out, "{}", cert.to_code()?.generator())?;
            if *check > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                for i in 0..*check {
                    let mut perm: Vec<usize> = (0..c.len()).collect();
                    perm.shuffle(&mut rng);
                    let other = c.random_basis_change(&mut rng).permute(&perm);
                    if certificate(&other)?.bytes() != cert.bytes() {
                        writeln!(out, "# certificate changed under re-encoding {i} (seed {seed})")?;
                        return Ok(EXIT_FAIL);
                    }
                }
                writeln!(out, "# invariant under {check} re-encodings (seed {seed})")?;
            }
        }
        Command::Iso { a, b } => {
            let (a, b) = (read_code(a, cfg)?, read_code(b, cfg)?);
            match equivalence_witness(&a, &b)? {
                Some(perm) => {
                    writeln!(out, "equivalent")?;
                    let p: Vec<String> = perm.iter().map(|j| j.to_string()).collect();
                    writeln!(out, "witness {}", p.join(" "))?;
                }
                None => writeln!(out, "inequivalent")?,
            }
        }
        Command::Aut { matrix } => {
            let c = read_code(matrix, cfg)?;
            writeln!(out, "{}", automorphism_order(&c)?)?;
        }
        Command::Lp { file, tighten } => {
            let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let lp = parse_lp(&text)?;
            let res = lp.solve();
            write!(out, "{}", format_outcome(&lp, &res))?;
            if let Some(t) = tighten {
                let targets: Vec<String> = if t == "all" {
                    lp.vars().iter().filter(|v| var_weight(v).is_some()).cloned().collect()
                } else {
                    t.split(',').map(|s| s.trim().to_string()).collect()
                };
                let tight = tighten_integer(&lp, &descending_weight_order(&targets))?;
                for (name, b) in &tight.bounds {
                    let hi = b.upper.as_ref().map_or("inf".to_string(), |v| v.to_string());
                    writeln!(out, "{name} in {}..{hi}", b.lower)?;
                }
            }
        }
        Command::Griesmer { k, d } => {
            if *k == 0 {
                return Err(Failure::Usage("dimension must be positive".into()));
            }
            writeln!(out, "{}", griesmer(*k, *d))?;
        }
        Command::Classify { spec, summary } => {
            let s = search_spec(spec, cfg)?;
            let c = classify(&s, &[], &classify_options(cfg))?;
            for n in s.n_min..=s.n_max {
                let Some(db) = c.get(s.k, n) else { continue };
                if *summary {
                    writeln!(out, "k={} n={n} count={}", s.k, db.len())?;
                } else if !db.is_empty() {
                    write!(out, "{}", db.to_text())?;
                }
            }
        }
        Command::Extend { parents, k, n } => {
            cfg.check_dims(*k, *n).map_err(Failure::Usage)?;
            let dbs = parents
                .iter()
                .map(|p| CodeDatabase::read(p))
                .collect::<Result<Vec<_>, _>>()?;
            let Some(first) = dbs.first() else {
                return Err(Failure::Usage("no parent databases".into()));
            };
            if let Some(bad) = dbs.iter().find(|d| d.k + 1 != *k) {
                return Err(Failure::Usage(format!("parent of dimension {} cannot extend to {k}", bad.k)));
            }
            let spec = first.spec.at(*k, *n, *n);
            let db = extend_dimension(&dbs, &spec, *n, &classify_options(cfg))?;
            write!(out, "{}", db.to_text())?;
        }
        Command::ScanColumns { matrix } => {
            let c = read_code(matrix, cfg)?;
            let r = column_replacement_scan(&c)?;
            writeln!(out, "cases {}", r.cases)?;
            writeln!(out, "distance {}", r.original_distance)?;
            writeln!(out, "lowered {}", r.lowered)?;
            writeln!(out, "equivalent {}", r.equivalent)?;
            writeln!(out, "new_classes {}", r.inequivalent.len())?;
            for (cert, col, v) in &r.inequivalent {
                writeln!(out, "# class {} from column {col} := {v:#x}", cert.to_hex())?;
            }
            let h: Vec<String> = r.distance_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
            writeln!(out, "histogram {}", h.join(" "))?;
        }
        Command::VerifyPaper {
            checks,
            machine,
            timings,
            ..
        } => {
            let opts = VerifyOptions {
                tier: cfg.tier,
                classify: classify_options(cfg),
            };
            let ids: Vec<&str> = if checks.is_empty() {
                CHECK_IDS.to_vec()
            } else {
                checks.iter().map(String::as_str).collect()
            };
            let mut failed = false;
            for id in ids {
                let r = verify(id, &opts)?;
                failed |= r.status == CheckStatus::Fail;
                if !*machine {
                    write!(out, "{}", r.render(*timings))?;
                }
                writeln!(out, "{}", r.machine_line())?;
            }
            return Ok(if failed { EXIT_FAIL } else { EXIT_OK });
        }
    }
    Ok(EXIT_OK)
}

fn is_zero(r: &gf2codes::Rational) -> bool {
    r == &gf2codes::Rational::from_integer(0.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_lists() {
        assert_eq!(parse_weights("20,24, 28").unwrap(), vec![20, 24, 28]);
        assert_eq!(parse_weights("40..56:8,40").unwrap(), vec![40, 48, 56]);
        assert!(parse_weights("7..9:0").is_err());
        assert!(parse_weights("x").is_err());
    }

    #[test]
    fn error_classes() {
        assert!(matches!(Failure::from(Error::BudgetExceeded { limit: 1 }), Failure::Budget(_)));
        assert!(matches!(Failure::from(Error::InvalidSpec("x".into())), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::Infeasible), Failure::Failed(_)));
    }
}
