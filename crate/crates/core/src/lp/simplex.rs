//! Two-phase tableau simplex with Bland's rule.
//!
//! Every outcome carries a certificate that [`LpOutcome::verify`] re-checks
//! against the original program: a primal point plus dual multipliers for an
//! optimum, a Farkas combination for infeasibility, and a ray for
//! unboundedness.

use super::program::{Direction, LinearProgram, Sense};
use super::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpCertificate<S> {
    /// `dual[r]` is the multiplier of constraint `r` for the minimisation form
    /// (the objective negated when maximising).
    Optimal { basis: Vec<usize>, dual: Vec<S> },
    /// Multipliers `y` with `y^T A <= 0`, sign-compatible with each row, and `y^T b > 0`.
    Infeasible { farkas: Vec<S> },
    /// Direction along which the objective improves without bound.
    Unbounded { ray: Vec<S> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpOutcome<S> {
    pub status: Status,
    /// Optimum in the program's own direction, including the objective constant.
    pub value: Option<S>,
    /// Optimal vertex, or a feasible point when unbounded; empty when infeasible.
    pub solution: Vec<S>,
    pub certificate: LpCertificate<S>,
    pub pivots: usize,
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    obj: Vec<S>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] = self.obj[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns the unbounded column, if any.
    fn optimize(&mut self, allowed: usize) -> Option<usize> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_neg()) else {
                return None;
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_pos() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (!(ratio > *br) && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn set_costs(&mut self, costs: &[S]) {
        let rhs = self.rhs();
        let mut obj: Vec<S> = costs.to_vec();
        obj.push(S::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs {
                if !row[j].is_zero() {
                    obj[j] = obj[j].clone() - cb.clone() * row[j].clone();
                }
            }
        }
        self.obj = obj;
    }
}

impl<S: Scalar> LinearProgram<S> {
    /// Solves the program exactly (for exact scalars) with Bland's anti-cycling rule.
    pub fn solve(&self) -> LpOutcome<S> {
        let nv = self.num_vars();
        let m = self.constraints.len();
        let n_slack = self.constraints.iter().filter(|c| c.sense != Sense::Eq).count();
        let art0 = nv + n_slack;
        let width = art0 + m;

        let mut signs = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        let mut slack = nv;
        for (r, c) in self.constraints.iter().enumerate() {
            let mut row = vec![S::zero(); width + 1];
            for (v, coeff) in &c.lhs.terms {
                row[*v] = row[*v].clone() + coeff.clone();
            }
            match c.sense {
                Sense::Le => {
                    row[slack] = S::one();
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -S::one();
                    slack += 1;
                }
                Sense::Eq => {}
            }
            row[width] = c.rhs.clone() - c.lhs.constant.clone();
            let sign = if row[width].is_neg() { -S::one() } else { S::one() };
            if sign.is_neg() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[art0 + r] = S::one();
            signs.push(sign);
            rows.push(row);
        }

        let mut t = Tableau {
            rows,
            obj: Vec::new(),
            basis: (art0..art0 + m).collect(),
            width,
            pivots: 0,
        };

        // phase 1
        let mut phase1 = vec![S::zero(); width];
        for c in phase1.iter_mut().skip(art0) {
            *c = S::one();
        }
        t.set_costs(&phase1);
        t.optimize(art0);
        let infeasibility = -t.obj[width].clone();
        if infeasibility.is_pos() {
            let farkas = (0..m)
                .map(|r| signs[r].clone() * (S::one() - t.obj[art0 + r].clone()))
                .collect();
            return LpOutcome {
                status: Status::Infeasible,
                value: None,
                solution: Vec::new(),
                certificate: LpCertificate::Infeasible { farkas },
                pivots: t.pivots,
            };
        }

        // drive remaining artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !t.rows[i][j].near_zero()) {
                    t.pivot(i, j);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }

        // phase 2, always minimising
        let negate = self.objective.direction == Direction::Maximize;
        let mut costs = vec![S::zero(); width];
        for (v, c) in &self.objective.expr.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            costs[*v] = costs[*v].clone() + c;
        }
        t.set_costs(&costs);
        let unbounded = t.optimize(art0);

        let mut x = vec![S::zero(); nv];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < nv {
                x[b] = t.rows[i][width].clone();
            }
        }

        if let Some(c) = unbounded {
            let mut ray = vec![S::zero(); nv];
            if c < nv {
                ray[c] = S::one();
            }
            for (i, &b) in t.basis.iter().enumerate() {
                if b < nv {
                    ray[b] = -t.rows[i][c].clone();
                }
            }
            return LpOutcome {
                status: Status::Unbounded,
                value: None,
                solution: x,
                certificate: LpCertificate::Unbounded { ray },
                pivots: t.pivots,
            };
        }

        let dual = (0..m)
            .map(|r| signs[r].clone() * -t.obj[art0 + r].clone())
            .collect();
        let value = self.objective.expr.eval(&x);
        LpOutcome {
            status: Status::Optimal,
            value: Some(value),
            solution: x,
            certificate: LpCertificate::Optimal {
                basis: t.basis.clone(),
                dual,
            },
            pivots: t.pivots,
        }
    }
}

impl<S: Scalar> LpOutcome<S> {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == Status::Infeasible
    }

    /// Re-checks the certificate against `lp` with the scalar's own arithmetic.
    pub fn verify(&self, lp: &LinearProgram<S>) -> bool {
        let nv = lp.num_vars();
        let negate = lp.objective.direction == Direction::Maximize;
        let cost = |j: usize| -> S {
            let c = lp
                .objective
                .expr
                .terms
                .iter()
                .filter(|(v, _)| *v == j)
                .fold(S::zero(), |a, (_, c)| a + c.clone());
            if negate {
                -c
            } else {
                c
            }
        };
        let column_sum = |y: &[S], j: usize| -> S {
            lp.constraints
                .iter()
                .zip(y)
                .fold(S::zero(), |acc, (c, yr)| {
                    let a = c
                        .lhs
                        .terms
                        .iter()
                        .filter(|(v, _)| *v == j)
                        .fold(S::zero(), |s, (_, a)| s + a.clone());
                    acc + yr.clone() * a
                })
        };
        let signs_ok = |y: &[S]| {
            lp.constraints.iter().zip(y).all(|(c, yr)| match c.sense {
                Sense::Le => !yr.is_pos(),
                Sense::Ge => !yr.is_neg(),
                Sense::Eq => true,
            })
        };
        let rhs = |r: usize| lp.constraints[r].rhs.clone() - lp.constraints[r].lhs.constant.clone();
        match &self.certificate {
            LpCertificate::Optimal { dual, .. } => {
                if dual.len() != lp.constraints.len() || !lp.is_feasible_point(&self.solution) {
                    return false;
                }
                if !signs_ok(dual) {
                    return false;
                }
                if (0..nv).any(|j| (cost(j) - column_sum(dual, j)).is_neg()) {
                    return false;
                }
                let dual_value = dual
                    .iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (r, y)| acc + y.clone() * rhs(r));
                let primal = lp.objective.expr.eval(&self.solution) - lp.objective.expr.constant.clone();
                let primal_min = if negate { -primal } else { primal };
                let value_ok = match &self.value {
                    Some(v) => (v.clone() - lp.objective.expr.eval(&self.solution)).near_zero(),
                    None => false,
                };
                value_ok && (dual_value - primal_min).near_zero()
            }
            LpCertificate::Infeasible { farkas } => {
                farkas.len() == lp.constraints.len()
                    && signs_ok(farkas)
                    && (0..nv).all(|j| !column_sum(farkas, j).is_pos())
                    && farkas
                        .iter()
                        .enumerate()
                        .fold(S::zero(), |acc, (r, y)| acc + y.clone() * rhs(r))
                        .is_pos()
            }
            LpCertificate::Unbounded { ray } => {
                if ray.len() != nv || ray.iter().any(|d| d.is_neg()) {
                    return false;
                }
                if !lp.is_feasible_point(&self.solution) {
                    return false;
                }
                let dirs_ok = lp.constraints.iter().all(|c| {
                    let ad = c
                        .lhs
                        .terms
                        .iter()
                        .fold(S::zero(), |acc, (v, a)| acc + a.clone() * ray[*v].clone());
                    match c.sense {
                        Sense::Le => !ad.is_pos(),
                        Sense::Ge => !ad.is_neg(),
                        Sense::Eq => ad.near_zero(),
                    }
                });
                let improve = (0..nv).fold(S::zero(), |acc, j| acc + cost(j) * ray[j].clone());
                dirs_ok && improve.is_neg()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::program::LinearExpr;
    use crate::Rational;

    fn q(p: i64, r: i64) -> Rational {
        Rational::from_ratio(p, r)
    }

    fn small() -> LinearProgram<Rational> {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(1, 1)), ("y", q(1, 1))]).unwrap();
        lp.add_constraint("c1", e, Sense::Le, q(4, 1)).unwrap();
        let e = lp.expr(&[("x", q(1, 1)), ("y", q(3, 1))]).unwrap();
        lp.add_constraint("c2", e, Sense::Le, q(6, 1)).unwrap();
        let e = lp.expr(&[("x", q(1, 1))]).unwrap();
        lp.add_constraint("c3", e, Sense::Le, q(3, 1)).unwrap();
        let obj = lp.expr(&[("x", q(3, 1)), ("y", q(2, 1))]).unwrap();
        lp.set_objective(obj, Direction::Maximize).unwrap();
        lp
    }

    #[test]
    fn textbook_max() {
        let lp = small();
        let out = lp.solve();
        assert_eq!(out.status, Status::Optimal);
        assert_eq!(out.value, Some(q(11, 1)));
        assert_eq!(out.solution, vec![q(3, 1), q(1, 1)]);
        assert!(out.verify(&lp));
    }

    #[test]
    fn fractional_optimum_and_ge_rows() {
        // min x + y s.t. 3x + y >= 2, x + 3y >= 2  -> x = y = 1/2
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(3, 1)), ("y", q(1, 1))]).unwrap();
        lp.add_constraint("a", e, Sense::Ge, q(2, 1)).unwrap();
        let e = lp.expr(&[("x", q(1, 1)), ("y", q(3, 1))]).unwrap();
        lp.add_constraint("b", e, Sense::Ge, q(2, 1)).unwrap();
        let obj = lp.expr(&[("x", q(1, 1)), ("y", q(1, 1))]).unwrap();
        lp.set_objective(obj, Direction::Minimize).unwrap();
        let out = lp.solve();
        assert_eq!(out.value, Some(q(1, 1)));
        assert_eq!(out.solution, vec![q(1, 2), q(1, 2)]);
        assert!(out.verify(&lp));
    }

    #[test]
    fn infeasible_has_farkas() {
        let mut lp = LinearProgram::new(vec!["x".into()]).unwrap();
        let e = lp.expr(&[("x", q(1, 1))]).unwrap();
        lp.add_constraint("lo", e.clone(), Sense::Ge, q(2, 1)).unwrap();
        lp.add_constraint("hi", e, Sense::Le, q(1, 1)).unwrap();
        let out = lp.solve();
        assert_eq!(out.status, Status::Infeasible);
        assert!(out.verify(&lp));
    }

    #[test]
    fn unbounded_has_ray() {
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(1, 1)), ("y", q(-1, 1))]).unwrap();
        lp.add_constraint("c", e, Sense::Le, q(1, 1)).unwrap();
        let obj = lp.expr(&[("x", q(1, 1))]).unwrap();
        lp.set_objective(obj, Direction::Maximize).unwrap();
        let out = lp.solve();
        assert_eq!(out.status, Status::Unbounded);
        assert!(out.verify(&lp));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", q(1, 1)), ("y", q(1, 1))]).unwrap();
        lp.add_constraint("a", e.clone(), Sense::Eq, q(2, 1)).unwrap();
        lp.add_constraint("b", e.scaled(&q(2, 1)), Sense::Eq, q(4, 1)).unwrap();
        let obj = lp.expr(&[("x", q(1, 1))]).unwrap();
        lp.set_objective(obj, Direction::Maximize).unwrap();
        let out = lp.solve();
        assert_eq!(out.value, Some(q(2, 1)));
        assert!(out.verify(&lp));
    }

    #[test]
    fn objective_constant_and_negative_rhs() {
        let mut lp = LinearProgram::new(vec!["x".into()]).unwrap();
        let e = LinearExpr::new().term(0, q(-1, 1));
        lp.add_constraint("c", e, Sense::Le, q(-3, 1)).unwrap();
        let obj = LinearExpr::new().term(0, q(1, 1)).with_constant(q(1, 1));
        lp.set_objective(obj, Direction::Minimize).unwrap();
        let out = lp.solve();
        assert_eq!(out.value, Some(q(4, 1)));
        assert!(out.verify(&lp));
    }

    #[test]
    fn float_instantiation_agrees_on_small_problem() {
        let mut lp = LinearProgram::<f64>::new(vec!["x".into(), "y".into()]).unwrap();
        let e = lp.expr(&[("x", 1.0), ("y", 1.0)]).unwrap();
        lp.add_constraint("c1", e, Sense::Le, 4.0).unwrap();
        let e = lp.expr(&[("x", 1.0), ("y", 3.0)]).unwrap();
        lp.add_constraint("c2", e, Sense::Le, 6.0).unwrap();
        let e = lp.expr(&[("x", 1.0)]).unwrap();
        lp.add_constraint("c3", e, Sense::Le, 3.0).unwrap();
        let obj = lp.expr(&[("x", 3.0), ("y", 2.0)]).unwrap();
        lp.set_objective(obj, Direction::Maximize).unwrap();
        let out = lp.solve();
        assert!((out.value.unwrap() - 11.0).abs() < 1e-9);
        assert!(out.verify(&lp));
    }
}
