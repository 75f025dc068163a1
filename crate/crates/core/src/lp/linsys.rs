use super::scalar::Scalar;

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<S> {
    Inconsistent,
    /// `x = particular + sum_f t_f * directions[f]`, one direction per free variable.
    Affine {
        particular: Vec<S>,
        free: Vec<usize>,
        directions: Vec<Vec<S>>,
    },
}

impl<S: Scalar> LinearSolution<S> {
    pub fn unique(&self) -> Option<&[S]> {
        match self {
            LinearSolution::Affine {
                particular, free, ..
            } if free.is_empty() => Some(particular),
            _ => None,
        }
    }

    /// Expresses variable `var` as `constant + sum coeff * free_var`.
    pub fn in_terms_of_free(&self, var: usize) -> Option<(S, Vec<(usize, S)>)> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Affine {
                particular,
                free,
                directions,
            } => Some((
                particular[var].clone(),
                free.iter()
                    .zip(directions)
                    .filter(|(_, d)| !d[var].near_zero())
                    .map(|(&f, d)| (f, d[var].clone()))
                    .collect(),
            )),
        }
    }
}

/// Gauss-Jordan elimination. Pivots are taken left to right, so the
/// rightmost columns are the ones left free when the system is underdetermined.
pub fn solve_linear_system<S: Scalar>(a: &[Vec<S>], b: &[S]) -> LinearSolution<S> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].near_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pv = rows[rank][c].clone();
        for v in rows[rank].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        let prow = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].near_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[cols].near_zero()) {
        return LinearSolution::Inconsistent;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut particular = vec![S::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = rows[r][cols].clone();
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![S::zero(); cols];
            d[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                d[p] = -rows[r][f].clone();
            }
            d
        })
        .collect();
    LinearSolution::Affine {
        particular,
        free,
        directions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(-1)]];
        let sol = solve_linear_system(&a, &[q(5), q(1)]);
        assert_eq!(sol.unique().unwrap(), &[q(2), q(1)]);
    }

    #[test]
    fn underdetermined_keeps_last_column_free() {
        // x + y + z = 3, y - z = 1  ->  y = 1 + z, x = 2 - 2z
        let a = vec![vec![q(1), q(1), q(1)], vec![q(0), q(1), q(-1)]];
        let sol = solve_linear_system(&a, &[q(3), q(1)]);
        let (c, terms) = sol.in_terms_of_free(0).unwrap();
        assert_eq!(c, q(2));
        assert_eq!(terms, vec![(2, q(-2))]);
    }

    #[test]
    fn inconsistent() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(solve_linear_system(&a, &[q(1), q(3)]), LinearSolution::Inconsistent);
    }

    #[test]
    fn zero_system() {
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(solve_linear_system(&a, &[q(0), q(0)]).unique().unwrap(), &[q(0), q(0)]);
    }
}
