use std::collections::HashMap;
use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// A sparse linear form `sum coeffs[i].1 * x[coeffs[i].0] + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearExpr<S> {
    pub terms: Vec<(usize, S)>,
    pub constant: S,
}

impl<S: Scalar> LinearExpr<S> {
    pub fn new() -> Self {
        Self {
            terms: Vec::new(),
            constant: S::zero(),
        }
    }

    pub fn term(mut self, var: usize, coeff: S) -> Self {
        self.add_term(var, coeff);
        self
    }

    pub fn add_term(&mut self, var: usize, coeff: S) {
        if let Some(t) = self.terms.iter_mut().find(|t| t.0 == var) {
            t.1 = t.1.clone() + coeff;
        } else {
            self.terms.push((var, coeff));
        }
    }

    pub fn with_constant(mut self, c: S) -> Self {
        self.constant = c;
        self
    }

    pub fn eval(&self, x: &[S]) -> S {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| acc + c.clone() * x[*v].clone())
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(v, c)| (*v, c.clone() * factor.clone()))
                .collect(),
            constant: self.constant.clone() * factor.clone(),
        }
    }
}

impl<S: Scalar> Default for LinearExpr<S> {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<S> {
    pub label: String,
    /// Left-hand side; its constant is folded into the right-hand side when solving.
    pub lhs: LinearExpr<S>,
    pub sense: Sense,
    pub rhs: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn holds(&self, x: &[S]) -> bool {
        let lhs = self.lhs.eval(x);
        let diff = lhs - self.rhs.clone();
        match self.sense {
            Sense::Le => !diff.is_pos(),
            Sense::Ge => !diff.is_neg(),
            Sense::Eq => diff.near_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Objective<S> {
    pub expr: LinearExpr<S>,
    pub direction: Direction,
}

/// A linear program over nonnegative variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<S> {
    vars: Vec<String>,
    index: HashMap<String, usize>,
    pub constraints: Vec<Constraint<S>>,
    pub objective: Objective<S>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(vars: Vec<String>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidProgram(format!("duplicate variable {v}")));
            }
        }
        Ok(Self {
            vars,
            index,
            constraints: Vec::new(),
            objective: Objective {
                expr: LinearExpr::new(),
                direction: Direction::Minimize,
            },
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidProgram(format!("unknown variable {name}")))
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Builds an expression from `(name, coefficient)` pairs.
    pub fn expr(&self, terms: &[(&str, S)]) -> Result<LinearExpr<S>> {
        let mut e = LinearExpr::new();
        for (name, c) in terms {
            e.add_term(self.var(name)?, c.clone());
        }
        Ok(e)
    }

    pub fn add_constraint(&mut self, label: impl Into<String>, lhs: LinearExpr<S>, sense: Sense, rhs: S) -> Result<()> {
        if let Some((v, _)) = lhs.terms.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(Error::InvalidProgram(format!("constraint references variable #{v}")));
        }
        self.constraints.push(Constraint {
            label: label.into(),
            lhs,
            sense,
            rhs,
        });
        Ok(())
    }

    /// Fixes a variable to a value via an equality row.
    pub fn fix(&mut self, name: &str, value: S) -> Result<()> {
        let v = self.var(name)?;
        self.add_constraint(
            format!("fix_{name}"),
            LinearExpr::new().term(v, S::one()),
            Sense::Eq,
            value,
        )
    }

    pub fn set_objective(&mut self, expr: LinearExpr<S>, direction: Direction) -> Result<()> {
        if let Some((v, _)) = expr.terms.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(Error::InvalidProgram(format!("objective references variable #{v}")));
        }
        self.objective = Objective { expr, direction };
        Ok(())
    }

    /// The same program with a new objective.
    pub fn with_objective(&self, expr: LinearExpr<S>, direction: Direction) -> Result<Self> {
        let mut lp = self.clone();
        lp.set_objective(expr, direction)?;
        Ok(lp)
    }

    pub fn is_feasible_point(&self, x: &[S]) -> bool {
        x.len() == self.vars.len()
            && x.iter().all(|v| !v.is_neg())
            && self.constraints.iter().all(|c| c.holds(x))
    }

    /// Every constraint (and the objective) multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &S) -> Self {
        let mut lp = self.clone();
        for c in &mut lp.constraints {
            c.lhs = c.lhs.scaled(factor);
            c.rhs = c.rhs.clone() * factor.clone();
        }
        lp
    }
}
