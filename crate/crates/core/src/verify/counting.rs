//! Double counting over the residual code of one fixed codeword.
//!
//! Each codeword `c'` outside `{0, c}` lies in exactly one two-dimensional
//! subcode `{0, c, c', c' + c}`; its type `(a, b, c; w)` records the three
//! nonzero weights and the weight `w` of the image of `c'` in `Res(C; c)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{solve_linear_system, LinearSolution};
use crate::spectrum::{krawtchouk, residual_weight, WeightDistribution};
use crate::Rational;

/// Type `(a, b, c; w)` of a two-dimensional subcode through the fixed word of weight `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResidualPattern {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub w: usize,
}

impl ResidualPattern {
    /// The pattern with its residual weight computed from `a`, `b`, `c`.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let w = residual_weight(b, c, a)?;
        Ok(Self { a, b, c, w })
    }

    fn multiplicity(&self, v: usize) -> usize {
        usize::from(self.b == v) + usize::from(self.c == v)
    }
}

impl std::fmt::Display for ResidualPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{};{})", self.a, self.b, self.c, self.w)
    }
}

/// What is known about the residual code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualConstraints {
    pub n: usize,
    pub k: usize,
    /// Number of MacWilliams identities used (`B_0 .. B_{identities-1}`).
    pub identities: usize,
    /// Indices `i >= 1` with `B_i = 0`; other dual counts are unknowns.
    pub dual_zero: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CountingOutcome {
    Inconsistent,
    /// Some counts are not determined; `free` lists the free pattern indices.
    Underdetermined { free: Vec<usize> },
    Unique {
        /// Count of each pattern, in input order.
        counts: Vec<Rational>,
        /// Codewords of each weight in the residual code.
        residual_weights: BTreeMap<usize, Rational>,
        /// Dual counts left as unknowns.
        dual: BTreeMap<usize, Rational>,
        /// Patterns with a negative or fractional count.
        violations: Vec<usize>,
    },
}

impl CountingOutcome {
    /// Whether the data admit no code.
    pub fn is_contradiction(&self) -> bool {
        match self {
            CountingOutcome::Inconsistent => true,
            CountingOutcome::Underdetermined { .. } => false,
            CountingOutcome::Unique { violations, .. } => !violations.is_empty(),
        }
    }
}

fn rat(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

fn check_patterns(patterns: &[ResidualPattern], spectrum: &WeightDistribution) -> Result<usize> {
    let a = patterns.first().map_or(0, |p| p.a);
    for p in patterns {
        if p.a != a {
            return Err(Error::InvalidSpec("patterns must share the fixed weight".into()));
        }
        if residual_weight(p.b, p.c, p.a)? != p.w {
            return Err(Error::InvalidSpec(format!("pattern {p} has inconsistent residual weight")));
        }
    }
    if !patterns.is_empty() && spectrum.get(a) == 0 {
        return Err(Error::InvalidSpec(format!("spectrum has no codeword of weight {a}")));
    }
    Ok(a)
}

/// Double-counting rows: `sum_p mult_p(v) x_p = A_v - [v = a]` for every nonzero weight `v`.
fn double_counting(patterns: &[ResidualPattern], spectrum: &WeightDistribution, a: usize) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let mut weights: Vec<usize> = spectrum.support().into_iter().filter(|&v| v > 0).collect();
    for p in patterns {
        weights.extend([p.b, p.c]);
    }
    weights.sort_unstable();
    weights.dedup();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for v in weights {
        rows.push(patterns.iter().map(|p| rat(p.multiplicity(v) as u64)).collect());
        let own = u64::from(v == a && !patterns.is_empty());
        rhs.push(rat(spectrum.get(v)) - rat(own));
    }
    (rows, rhs)
}

/// Solves the double counting equations joined with the residual code's
/// first MacWilliams identities.
pub fn residual_counting_argument(
    patterns: &[ResidualPattern],
    spectrum: &WeightDistribution,
    residual: &ResidualConstraints,
) -> Result<CountingOutcome> {
    let a = check_patterns(patterns, spectrum)?;
    let np = patterns.len();
    let unknown_dual: Vec<usize> = (1..residual.identities)
        .filter(|i| !residual.dual_zero.contains(i))
        .collect();
    let width = np + unknown_dual.len();
    let (mut rows, mut rhs) = double_counting(patterns, spectrum, a);
    for r in rows.iter_mut() {
        r.resize(width, Rational::zero());
    }
    let two_k = rat(BigInt::one() << residual.k);
    for i in 0..residual.identities {
        let mut row = vec![Rational::zero(); width];
        for (j, p) in patterns.iter().enumerate() {
            if p.w > residual.n {
                return Err(Error::InvalidSpec(format!("pattern {p} exceeds the residual length")));
            }
            row[j] = rat(krawtchouk(residual.n, i, p.w)?);
        }
        let k_i0 = rat(krawtchouk(residual.n, i, 0)?);
        let value = match unknown_dual.iter().position(|&u| u == i) {
            Some(pos) => {
                row[np + pos] = -two_k.clone();
                -k_i0
            }
            None if i == 0 => two_k.clone() - k_i0,
            None => -k_i0,
        };
        rows.push(row);
        rhs.push(value);
    }
    Ok(match solve_linear_system(&rows, &rhs) {
        LinearSolution::Inconsistent => CountingOutcome::Inconsistent,
        sol => match sol.unique() {
            None => {
                let LinearSolution::Affine { free, .. } = &sol else {
                    unreachable!("consistent systems are affine")
                };
                CountingOutcome::Underdetermined {
                    free: free.iter().copied().filter(|&f| f < np).collect(),
                }
            }
            Some(x) => {
                let counts = x[..np].to_vec();
                let mut residual_weights: BTreeMap<usize, Rational> = BTreeMap::new();
                for (p, c) in patterns.iter().zip(&counts) {
                    *residual_weights.entry(p.w).or_insert_with(Rational::zero) += c;
                }
                let dual = unknown_dual
                    .iter()
                    .zip(&x[np..])
                    .map(|(&i, v)| (i, v.clone()))
                    .collect();
                let violations = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.is_negative() || !c.is_integer())
                    .map(|(j, _)| j)
                    .collect();
                CountingOutcome::Unique {
                    counts,
                    residual_weights,
                    dual,
                    violations,
                }
            }
        },
    })
}

/// The double counting equations alone, solved for every residual weight as
/// `constant + coefficient * x_pivot`, where `x_pivot` counts pattern `pivot`.
pub fn residual_counts_in_terms_of(
    patterns: &[ResidualPattern],
    spectrum: &WeightDistribution,
    pivot: usize,
) -> Result<BTreeMap<usize, (Rational, Rational)>> {
    let a = check_patterns(patterns, spectrum)?;
    if pivot >= patterns.len() {
        return Err(Error::InvalidSpec(format!("pivot {pivot} out of range")));
    }
    // move the pivot to the last column so elimination leaves it free
    let mut order: Vec<usize> = (0..patterns.len()).filter(|&j| j != pivot).collect();
    order.push(pivot);
    let (rows, rhs) = double_counting(patterns, spectrum, a);
    let permuted: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| order.iter().map(|&j| r[j].clone()).collect())
        .collect();
    let sol = solve_linear_system(&permuted, &rhs);
    let last = order.len() - 1;
    let mut out: BTreeMap<usize, (Rational, Rational)> = BTreeMap::new();
    for (col, &j) in order.iter().enumerate() {
        let (c0, c1) = if col == last {
            (Rational::zero(), Rational::one())
        } else {
            let (c, terms) = sol
                .in_terms_of_free(col)
                .ok_or_else(|| Error::InvalidSpec("double counting equations are inconsistent".into()))?;
            let mut coeff = Rational::zero();
            for (f, v) in terms {
                if f != last {
                    return Err(Error::InvalidSpec("double counting leaves more than one count free".into()));
                }
                coeff += v;
            }
            (c, coeff)
        };
        let e = out
            .entry(patterns[j].w)
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        e.0 += c0;
        e.1 += c1;
    }
    Ok(out)
}

/// `c + m*x` rendered as `c + m*name`, `name - c`, and so on.
pub fn format_affine(constant: &Rational, coeff: &Rational, name: &str) -> String {
    use crate::lp::format_rational;
    let term = if coeff.is_zero() {
        String::new()
    } else if coeff.is_one() {
        name.to_string()
    } else if *coeff == -Rational::one() {
        format!("-{name}")
    } else {
        format!("{}*{name}", format_rational(coeff))
    };
    match (term.is_empty(), constant.is_zero()) {
        (true, _) => format_rational(constant),
        (false, true) => term,
        (false, false) => {
            if coeff.is_positive() {
                let sign = if constant.is_negative() { "-" } else { "+" };
                format!("{term} {sign} {}", format_rational(&constant.abs()))
            } else {
                format!("{} - {}", format_rational(constant), &term[1..])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn patterns() -> Vec<ResidualPattern> {
        [(40, 40), (40, 48), (40, 56), (48, 48)]
            .iter()
            .map(|&(b, c)| ResidualPattern::new(64, b, c).unwrap())
            .collect()
    }

    fn spectrum() -> WeightDistribution {
        WeightDistribution::from_pairs(85, &[(0, 1), (40, 360), (48, 138), (56, 12), (64, 1)]).unwrap()
    }

    #[test]
    fn pattern_residual_weights() {
        let w: Vec<usize> = patterns().iter().map(|p| p.w).collect();
        assert_eq!(w, vec![8, 12, 16, 16]);
        assert!(ResidualPattern::new(64, 40, 41).is_err());
    }

    #[test]
    fn contradiction_in_the_85_9_40_case() {
        let hat = ResidualConstraints {
            n: 21,
            k: 8,
            identities: 4,
            dual_zero: vec![1, 2],
        };
        let out = residual_counting_argument(&patterns(), &spectrum(), &hat).unwrap();
        let CountingOutcome::Unique {
            counts,
            residual_weights,
            ..
        } = &out
        else {
            panic!("expected a unique solution, got {out:?}");
        };
        let r = |x: i64| rat(x);
        assert_eq!(counts, &vec![r(102), r(144), r(12), r(-3)]);
        assert_eq!(residual_weights[&16], r(9));
        assert!(out.is_contradiction());
    }

    #[test]
    fn symbolic_relations() {
        let rel = residual_counts_in_terms_of(&patterns(), &spectrum(), 0).unwrap();
        assert_eq!(format_affine(&rel[&12].0, &rel[&12].1, "x8"), "348 - 2*x8");
        assert_eq!(format_affine(&rel[&16].0, &rel[&16].1, "x8"), "x8 - 93");
        assert_eq!(format_affine(&rel[&8].0, &rel[&8].1, "x8"), "x8");
    }

    #[test]
    fn even_3_2_code_is_consistent() {
        // {000, 110, 011, 101}: the residual of a weight-2 word is the [1,1] code
        let s = WeightDistribution::from_pairs(3, &[(0, 1), (2, 3)]).unwrap();
        let p = ResidualPattern::new(2, 2, 2).unwrap();
        assert_eq!(p.w, 1);
        let hat = ResidualConstraints {
            n: 1,
            k: 1,
            identities: 2,
            dual_zero: vec![],
        };
        let out = residual_counting_argument(&[p], &s, &hat).unwrap();
        assert!(!out.is_contradiction());
        assert!(matches!(out, CountingOutcome::Unique { ref counts, .. } if counts == &vec![rat(1)]));
    }
}
