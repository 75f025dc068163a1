//! Linear programs over weight-distribution variables built from the first
//! few MacWilliams identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::program::{Direction, LinearExpr, LinearProgram, Sense};
use crate::error::{Error, Result};
use crate::spectrum::krawtchouk;
use crate::Rational;

/// Variable name for the primal count `A_j`.
pub fn a_var(j: usize) -> String {
    format!("A{j}")
}

/// Variable name for the dual count `B_i`.
pub fn b_var(i: usize) -> String {
    format!("B{i}")
}

/// Weight index of an `A`/`B` variable name.
pub fn var_weight(name: &str) -> Option<usize> {
    name.get(1..)?.parse().ok()
}

/// A side constraint over named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraConstraint {
    pub label: String,
    pub terms: Vec<(String, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl ExtraConstraint {
    pub fn new(label: impl Into<String>, terms: Vec<(String, Rational)>, sense: Sense, rhs: Rational) -> Self {
        Self {
            label: label.into(),
            terms,
            sense,
            rhs,
        }
    }

    /// `name = value`.
    pub fn fix(name: &str, value: i64) -> Self {
        Self::new(
            format!("fix_{name}"),
            vec![(name.to_string(), Rational::one())],
            Sense::Eq,
            Rational::from_integer(value.into()),
        )
    }

    /// `sum of names (sense) rhs`, all coefficients one.
    pub fn sum(label: &str, names: &[String], sense: Sense, rhs: i64) -> Self {
        Self::new(
            label,
            names.iter().map(|n| (n.clone(), Rational::one())).collect(),
            sense,
            Rational::from_integer(rhs.into()),
        )
    }
}

/// Objective over named variables plus a constant (e.g. `A_0 = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct NamedObjective {
    pub terms: Vec<(String, Rational)>,
    pub constant: Rational,
    pub direction: Direction,
}

impl NamedObjective {
    pub fn sum(names: &[String], constant: i64, direction: Direction) -> Self {
        Self {
            terms: names.iter().map(|n| (n.clone(), Rational::one())).collect(),
            constant: Rational::from_integer(constant.into()),
            direction,
        }
    }
}

/// Converts named terms to a [`LinearExpr`], failing on undeclared variables.
pub fn named_expr(lp: &LinearProgram<Rational>, terms: &[(String, Rational)]) -> Result<LinearExpr<Rational>> {
    let mut e = LinearExpr::new();
    for (name, c) in terms {
        let v = lp.var(name).map_err(|_| {
            Error::InvalidProgram(format!("{name} is not a variable of this program"))
        })?;
        e.add_term(v, c.clone());
    }
    Ok(e)
}

/// Builds the LP with variables `A_j` (`j` in `allowed`) and `B_1..B_{m-1}`,
/// one equality row per identity `sum_j K_i(j) A_j = 2^k B_i` for `i < m`
/// (with `A_0 = B_0 = 1` substituted), all variables nonnegative.
pub fn build_mw_lp(
    n: usize,
    k: usize,
    allowed: &[usize],
    m: usize,
    extra: &[ExtraConstraint],
    objective: Option<&NamedObjective>,
) -> Result<LinearProgram<Rational>> {
    if m == 0 || m > n + 1 {
        return Err(Error::InvalidProgram(format!(
            "identity count {m} must lie in 1..={}",
            n + 1
        )));
    }
    let mut weights = allowed.to_vec();
    weights.sort_unstable();
    weights.dedup();
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w > n) {
        return Err(Error::InvalidProgram(format!("weight {w} outside 1..={n}")));
    }
    let mut vars: Vec<String> = weights.iter().map(|&j| a_var(j)).collect();
    vars.extend((1..m).map(b_var));
    let mut lp = LinearProgram::new(vars)?;
    let two_k = Rational::from_integer(BigInt::one() << k);
    for i in 0..m {
        let mut e = LinearExpr::new();
        for (idx, &j) in weights.iter().enumerate() {
            let kij = krawtchouk(n, i, j)?;
            if !kij.is_zero() {
                e.add_term(idx, Rational::from_integer(kij));
            }
        }
        let k_i0 = Rational::from_integer(krawtchouk(n, i, 0)?);
        let rhs = if i == 0 {
            two_k.clone() - k_i0
        } else {
            e.add_term(weights.len() + i - 1, -two_k.clone());
            -k_i0
        };
        lp.add_constraint(format!("mw{i}"), e, Sense::Eq, rhs)?;
    }
    for c in extra {
        let e = named_expr(&lp, &c.terms)?;
        lp.add_constraint(c.label.clone(), e, c.sense, c.rhs.clone())?;
    }
    if let Some(obj) = objective {
        let e = named_expr(&lp, &obj.terms)?.with_constant(obj.constant.clone());
        lp.set_objective(e, obj.direction)?;
    }
    Ok(lp)
}

/// Identity `i` with `B_i = 0` substituted for `i >= 1` (and `B_0 = 1`),
/// scaled to coprime integers with a positive leading coefficient.
/// Returns the coefficients over `allowed` (ascending) and the right-hand side.
pub fn normalized_identity(n: usize, k: usize, allowed: &[usize], i: usize) -> Result<(Vec<BigInt>, BigInt)> {
    let mut weights = allowed.to_vec();
    weights.sort_unstable();
    let mut coeffs = weights
        .iter()
        .map(|&j| krawtchouk(n, i, j))
        .collect::<Result<Vec<_>>>()?;
    let k_i0 = krawtchouk(n, i, 0)?;
    let mut rhs = if i == 0 { (BigInt::one() << k) - k_i0 } else { -k_i0 };
    let g = coeffs.iter().fold(rhs.abs(), |g, c| g.gcd(c));
    if !g.is_zero() {
        for c in coeffs.iter_mut() {
            *c /= &g;
        }
        rhs /= &g;
    }
    if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
        rhs = -rhs;
    }
    Ok((coeffs, rhs))
}

/// Names `A_j` for the listed weights.
pub fn a_vars(weights: impl IntoIterator<Item = usize>) -> Vec<String> {
    weights.into_iter().map(a_var).collect()
}
