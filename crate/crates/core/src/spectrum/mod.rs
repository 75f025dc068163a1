//! Weight-distribution arithmetic: Krawtchouk polynomials, the MacWilliams
//! transform, the Griesmer bound and divisibility constraints.

mod divisibility;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use divisibility::{
    divisibility_admissible, divisibility_report, even_count_admissible, DivisibilityCase,
    DivisibilityReport, RationalInterval,
};

/// Counts `A_0..A_n` of codewords of each weight in an `[n, k]` code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    counts: Vec<u64>,
}

impl WeightDistribution {
    /// Validates `A_0 = 1`, `sum A_i = 2^k` and `counts.len() == n + 1`.
    pub fn new(n: usize, k: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::Data(format!(
                "weight distribution has {} entries, expected {}",
                counts.len(),
                n + 1
            )));
        }
        if counts[0] != 1 {
            return Err(Error::Data(format!("A_0 = {}, expected 1", counts[0])));
        }
        let total: u128 = counts.iter().map(|&c| c as u128).sum();
        if k >= 64 || total != 1u128 << k {
            return Err(Error::Data(format!(
                "weight distribution sums to {total}, expected 2^{k}"
            )));
        }
        Ok(Self { n, k, counts })
    }

    pub(crate) fn from_counts_unchecked(n: usize, k: usize, counts: Vec<u64>) -> Self {
        Self { n, k, counts }
    }

    /// Builds a distribution from sparse `(weight, count)` pairs; `A_0 = 1` is implied
    /// unless given, and `k` is inferred from the total.
    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![0u64; n + 1];
        counts[0] = 1;
        for &(w, c) in pairs {
            if w > n {
                return Err(Error::IndexOutOfRange { index: w, len: n + 1 });
            }
            counts[w] = c;
        }
        let total: u64 = counts.iter().sum();
        if !total.is_power_of_two() {
            return Err(Error::Data(format!(
                "weight distribution sums to {total}, not a power of two"
            )));
        }
        Self::new(n, total.trailing_zeros() as usize, counts)
    }

    /// Parses the sparse `i:A_i` form.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, tok) in text.split_whitespace().enumerate() {
            let bad = || Error::Parse {
                line: 1,
                column: idx + 1,
                message: format!("malformed pair {tok:?}"),
            };
            let (w, c) = tok.split_once(':').ok_or_else(bad)?;
            let w: usize = w.parse().map_err(|_| bad())?;
            let c: u64 = c.parse().map_err(|_| bad())?;
            pairs.push((w, c));
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    /// Nonzero weights that occur.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.counts[i] > 0).collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| self.counts[i] > 0)
    }

    pub fn is_divisible_by(&self, delta: usize) -> bool {
        self.support().iter().all(|w| w % delta == 0)
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.counts
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect()
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{i}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Binomial coefficient with `C(x, y) = 0` whenever `y < 0` or `y > x`.
pub fn binomial(x: i64, y: i64) -> BigInt {
    if y < 0 || x < 0 || y > x {
        return BigInt::zero();
    }
    let y = y.min(x - y);
    let mut acc = BigInt::one();
    for t in 0..y {
        acc *= x - t;
        acc /= t + 1;
    }
    acc
}

/// Binary Krawtchouk polynomial `K_i(j)` for length `n`.
pub fn krawtchouk(n: usize, i: usize, j: usize) -> Result<BigInt> {
    if i > n || j > n {
        return Err(Error::KrawtchoukRange {
            degree: i,
            point: j,
            len: n,
        });
    }
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let mut acc = BigInt::zero();
    for s in 0..=i.min(j) {
        let term = binomial(n - j, i - s) * binomial(j, s);
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `K_i(j)` for `0 <= i < degrees`, `0 <= j <= n`, as `table[i][j]`.
pub fn krawtchouk_table(n: usize, degrees: usize) -> Vec<Vec<BigInt>> {
    (0..degrees.min(n + 1))
        .map(|i| (0..=n).map(|j| krawtchouk(n, i, j).expect("in range")).collect())
        .collect()
}

/// The MacWilliams transform `B_i = 2^-k sum_j K_i(j) A_j`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDistribution {
    pub values: Vec<Rational>,
}

impl DualDistribution {
    /// Indices whose value is negative or not an integer.
    pub fn violations(&self) -> Vec<(usize, Rational)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative() || !v.is_integer())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    pub fn is_realizable(&self) -> bool {
        self.violations().is_empty()
    }

    /// The dual distribution as a [`WeightDistribution`] of dimension `n - k`,
    /// or the list of offending entries.
    pub fn to_distribution(&self, k: usize) -> std::result::Result<WeightDistribution, Vec<(usize, Rational)>> {
        let bad = self.violations();
        if !bad.is_empty() {
            return Err(bad);
        }
        let n = self.values.len() - 1;
        let counts: Vec<u64> = self
            .values
            .iter()
            .map(|v| v.to_integer().to_u64().unwrap_or(u64::MAX))
            .collect();
        WeightDistribution::new(n, n - k, counts).map_err(|_| Vec::new())
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

/// MacWilliams transform of an arbitrary rational spectrum of an `[n, k]` code.
pub fn macwilliams_rational(n: usize, k: usize, a: &[Rational]) -> DualDistribution {
    assert_eq!(a.len(), n + 1, "spectrum length must be n + 1");
    let scale = Rational::from_integer(BigInt::one() << k);
    let values = (0..=n)
        .map(|i| {
            let sum = a
                .iter()
                .enumerate()
                .filter(|(_, aj)| !aj.is_zero())
                .fold(Rational::zero(), |acc, (j, aj)| {
                    acc + aj * Rational::from_integer(krawtchouk(n, i, j).expect("in range"))
                });
            sum / &scale
        })
        .collect();
    DualDistribution { values }
}

pub fn macwilliams(a: &WeightDistribution) -> DualDistribution {
    macwilliams_rational(a.len(), a.dim(), &a.as_rationals())
}

/// Griesmer bound `g(k, d) = sum_{i<k} ceil(d / 2^i)`.
pub fn griesmer(k: usize, d: u64) -> u64 {
    (0..k).map(|i| d.div_ceil(1u64 << i.min(63))).sum()
}

/// Weight of the residual image of `c'` with respect to `c`, where `w1 = wt(c')`,
/// `w2 = wt(c' + c)` and `w = wt(c)`.
pub fn residual_weight(w1: usize, w2: usize, w: usize) -> Result<usize> {
    let total = w1 + w2;
    if total < w || (total - w) % 2 != 0 {
        return Err(Error::ResidualParity { w1, w2, w });
    }
    Ok((total - w) / 2)
}

/// Largest divisor of all occurring nonzero weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub delta: u64,
    /// Exponent of the 2-adic part: `2^exponent` divides `delta` exactly.
    pub exponent: u32,
}

impl Divisor {
    pub fn two_adic(&self) -> u64 {
        1 << self.exponent
    }
}

pub fn divisor(a: &WeightDistribution) -> Result<Divisor> {
    let g = a
        .support()
        .into_iter()
        .fold(0u64, |g, w| g.gcd(&(w as u64)));
    if g == 0 {
        return Err(Error::ZeroCode);
    }
    Ok(Divisor {
        delta: g,
        exponent: g.trailing_zeros(),
    })
}
