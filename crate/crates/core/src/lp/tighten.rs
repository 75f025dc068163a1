use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mw::var_weight;
use super::program::{Direction, LinearExpr, LinearProgram, Sense};
use super::scalar::Scalar;
use super::simplex::Status;
use crate::error::{Error, Result};
use crate::Rational;

/// Integer bounds `lower <= x <= upper` (`upper = None` when unbounded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBounds {
    pub lower: BigInt,
    pub upper: Option<BigInt>,
}

impl IntBounds {
    pub fn fixed(&self) -> Option<&BigInt> {
        self.upper.as_ref().filter(|u| **u == self.lower)
    }
}

#[derive(Clone, Debug)]
pub struct Tightened {
    pub bounds: BTreeMap<String, IntBounds>,
    /// Input program with the final integer bounds appended.
    pub program: LinearProgram<Rational>,
    pub rounds: usize,
}

impl Tightened {
    /// Targets whose bounds collapsed to a single integer.
    pub fn fixings(&self) -> BTreeMap<String, BigInt> {
        self.bounds
            .iter()
            .filter_map(|(k, b)| b.fixed().map(|v| (k.clone(), v.clone())))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&IntBounds> {
        self.bounds.get(name)
    }
}

/// Targets sorted by descending weight index, ties by name.
pub fn descending_weight_order(targets: &[String]) -> Vec<String> {
    let mut t = targets.to_vec();
    t.sort_by(|a, b| {
        var_weight(b)
            .cmp(&var_weight(a))
            .then_with(|| a.cmp(b))
    });
    t
}

/// Repeatedly maximises and minimises each target, rounds the optimum to
/// the integer inside it and adds the rounded bound as a constraint, until
/// no bound moves. Targets are processed in the given order.
///
/// Returns [`Error::Infeasible`] as soon as any program in the chain has no
/// solution, which for weight-distribution programs is a nonexistence proof.
pub fn tighten_integer(lp: &LinearProgram<Rational>, targets: &[String]) -> Result<Tightened> {
    let mut program = lp.clone();
    let mut bounds: BTreeMap<String, IntBounds> = BTreeMap::new();
    let vars: Vec<usize> = targets.iter().map(|t| program.var(t)).collect::<Result<_>>()?;
    for t in targets {
        bounds.insert(
            t.clone(),
            IntBounds {
                lower: BigInt::zero(),
                upper: None,
            },
        );
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for (name, &v) in targets.iter().zip(&vars) {
            let e = LinearExpr::new().term(v, Rational::one());
            for dir in [Direction::Maximize, Direction::Minimize] {
                let out = program.with_objective(e.clone(), dir)?.solve();
                match out.status {
                    Status::Infeasible => return Err(Error::Infeasible),
                    Status::Unbounded => continue,
                    Status::Optimal => {}
                }
                let value = out.value.expect("optimal value");
                let b = bounds.get_mut(name).expect("target registered");
                match dir {
                    Direction::Maximize => {
                        let ub = value.floor_value().to_integer();
                        if b.upper.as_ref().is_none_or(|u| ub < *u) {
                            b.upper = Some(ub.clone());
                            program.add_constraint(
                                format!("int_ub_{name}"),
                                e.clone(),
                                Sense::Le,
                                Rational::from_integer(ub),
                            )?;
                            changed = true;
                        }
                    }
                    Direction::Minimize => {
                        let lb = value.ceil_value().to_integer();
                        if lb > b.lower {
                            b.lower = lb.clone();
                            program.add_constraint(
                                format!("int_lb_{name}"),
                                e.clone(),
                                Sense::Ge,
                                Rational::from_integer(lb),
                            )?;
                            changed = true;
                        }
                    }
                }
                if let Some(u) = &b.upper {
                    if *u < b.lower {
                        return Err(Error::Infeasible);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Tightened {
        bounds,
        program,
        rounds,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> Rational {
        Rational::from_integer(p.into())
    }

    #[test]
    fn rounding_propagates() {
        // 2x + y = 3, y <= 2: max x = 3/2 -> x <= 1, min x = 1/2 -> x >= 1, hence y = 1
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(2)), ("y", q(1))]).unwrap();
        lp.add_constraint("c", e, Sense::Eq, q(3)).unwrap();
        let e = lp.expr(&[("y", q(1))]).unwrap();
        lp.add_constraint("cap", e, Sense::Le, q(2)).unwrap();
        let t = tighten_integer(&lp, &["x".into(), "y".into()]).unwrap();
        let fixed = t.fixings();
        assert_eq!(fixed["x"], BigInt::from(1));
        assert_eq!(fixed["y"], BigInt::from(1));
    }

    #[test]
    fn infeasible_chain_reported() {
        // x + y = 1/2 with x, y >= 0 integral is impossible: max x = 1/2 -> x <= 0, same y
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(2)), ("y", q(2))]).unwrap();
        lp.add_constraint("c", e, Sense::Eq, q(1)).unwrap();
        let err = tighten_integer(&lp, &["x".into(), "y".into()]).unwrap_err();
        assert_eq!(err, Error::Infeasible);
    }

    #[test]
    fn order_helper() {
        let t: Vec<String> = ["A36", "A44", "B3", "A40"].iter().map(|s| s.to_string()).collect();
        assert_eq!(descending_weight_order(&t), vec!["A44", "A40", "A36", "B3"]);
    }
}
