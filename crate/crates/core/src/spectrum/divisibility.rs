use std::fmt;

use num_bigint::BigInt;

use super::WeightDistribution;
use crate::Rational;

/// An interval of rationals with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: Rational,
    pub lo_open: bool,
    pub hi: Rational,
    pub hi_open: bool,
}

impl RationalInterval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            lo_open: false,
            hi,
            hi_open: false,
        }
    }

    /// `(lo, hi]`, the shape produced by a strict LP lower bound.
    pub fn open_closed(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            lo_open: true,
            hi,
            hi_open: false,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }
}

/// Which clause of the divisibility theorem pins down `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisibilityCase {
    /// `T < 2^(k-a)`: `T = 2^(k-a) - 2^(k-a-t)`, `1 <= t <= max(alpha, beta)`.
    Below,
    /// `2^(k-a) <= T <= 2^k - 2^(k-a)`: only the power-of-two divisibility applies.
    Band,
    /// `T > 2^k - 2^(k-a)`: `T = 2^k - 2^(k-a) + 2^(k-a-t)`, `0 <= t <= max(alpha, beta)`.
    Above,
}

impl DivisibilityCase {
    pub fn number(&self) -> u8 {
        match self {
            DivisibilityCase::Band => 1,
            DivisibilityCase::Below => 2,
            DivisibilityCase::Above => 3,
        }
    }
}

/// One admissible value of `T`, the number of codewords with weight divisible by `2 * 2^a`,
/// for a `2^a`-divisible code of dimension `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub k: usize,
    pub a: u32,
    pub t_count: u64,
    pub case: DivisibilityCase,
    pub t: Option<u32>,
    /// Dimension of the subcode with minimum distance `delta` implied by the case.
    pub subcode_dim: Option<usize>,
    pub alpha: i64,
    pub beta: i64,
}

impl DivisibilityReport {
    pub fn delta(&self) -> u64 {
        1 << self.a
    }
}

impl fmt::Display for DivisibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T={} case={} Delta={}",
            self.t_count,
            self.case.number(),
            self.delta()
        )?;
        if let Some(t) = self.t {
            write!(f, " t={t}")?;
        }
        if let Some(dim) = self.subcode_dim {
            write!(f, " subcode=[n,{dim},delta]")?;
        }
        Ok(())
    }
}

fn pow2(e: i64) -> u64 {
    1u64 << e
}

fn alpha_beta(k: i64, a: i64) -> (i64, i64) {
    ((k - a - 1).min(a + 1), (k - a + 1).div_euclid(2))
}

fn subcode_below(k: i64, a: i64, t: i64, beta: i64) -> Option<usize> {
    let dim = if t > beta { k - a - 2 } else { k - a - t };
    (dim >= 0).then_some(dim as usize)
}

fn subcode_above(k: i64, a: i64, t: i64) -> Option<usize> {
    let dim = if a == 1 {
        k - t
    } else if t == a + 1 && t <= k - a - 1 {
        k - 2
    } else {
        k - 1
    };
    (dim >= 0).then_some(dim as usize)
}

fn classify(k: i64, a: i64, t_count: u64) -> Option<DivisibilityReport> {
    let (alpha, beta) = alpha_beta(k, a);
    let tmax = alpha.max(beta);
    let low = pow2(k - a);
    let high = pow2(k) - low;
    let base = |case, t: Option<i64>, subcode_dim| DivisibilityReport {
        k: k as usize,
        a: a as u32,
        t_count,
        case,
        t: t.map(|t| t as u32),
        subcode_dim,
        alpha,
        beta,
    };
    let div_exp = (k - 1).div_euclid(a + 1);
    if t_count % pow2(div_exp) != 0 {
        return None;
    }
    if t_count < low {
        let t = (1..=tmax).find(|&t| k - a - t >= 0 && low - pow2(k - a - t) == t_count)?;
        Some(base(
            DivisibilityCase::Below,
            Some(t),
            subcode_below(k, a, t, beta),
        ))
    } else if t_count > high {
        let t = (0..=tmax).find(|&t| k - a - t >= 0 && high + pow2(k - a - t) == t_count)?;
        Some(base(DivisibilityCase::Above, Some(t), subcode_above(k, a, t)))
    } else {
        Some(base(DivisibilityCase::Band, None, None))
    }
}

fn candidates(k: i64, a: i64) -> Vec<u64> {
    let (alpha, beta) = alpha_beta(k, a);
    let tmax = alpha.max(beta);
    let low = pow2(k - a);
    let high = pow2(k) - low;
    let mut out = Vec::new();
    for t in 1..=tmax {
        if k - a - t >= 0 {
            out.push(low - pow2(k - a - t));
        }
    }
    let step = pow2((k - 1).div_euclid(a + 1));
    let mut t = low.div_ceil(step) * step;
    while t <= high {
        out.push(t);
        t += step;
    }
    for t in 0..=tmax {
        if k - a - t >= 0 {
            out.push(high + pow2(k - a - t));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Every value of `T` admissible for a `2^a`-divisible `k`-dimensional code that
/// lies in `range`, ascending. An empty result is a contradiction.
pub fn divisibility_admissible(k: usize, a: u32, range: &RationalInterval) -> Vec<DivisibilityReport> {
    assert!(k < 63, "dimension too large for divisibility bookkeeping");
    let (k, a) = (k as i64, a as i64);
    if a >= k {
        return Vec::new();
    }
    candidates(k, a)
        .into_iter()
        .filter(|&t| range.contains(&Rational::from_integer(BigInt::from(t))))
        .filter_map(|t| classify(k, a, t))
        .collect()
}

/// Possible numbers of even-weight codewords in a `k`-dimensional code.
pub fn even_count_admissible(k: usize) -> [u64; 2] {
    [1 << (k - 1), 1 << k]
}

/// Evaluates the divisibility bookkeeping for an actual `2^a`-divisible spectrum.
/// Returns `T`, `delta` (the least positive weight divisible by `2^(a+1)`, if any)
/// and the matching report, or `None` for `T` if the count is not admissible.
pub fn divisibility_report(
    spectrum: &WeightDistribution,
    a: u32,
) -> (u64, Option<usize>, Option<DivisibilityReport>) {
    let step = 2usize << a;
    let t_count: u64 = spectrum
        .counts()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % step == 0)
        .map(|(_, &c)| c)
        .sum();
    let delta = spectrum.support().into_iter().find(|w| w % step == 0);
    let report = if (a as usize) < spectrum.dim() {
        classify(spectrum.dim() as i64, a as i64, t_count)
    } else {
        None
    };
    (t_count, delta, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn even_nine_dim_above_lp_bound() {
        let range = RationalInterval::open_closed(r(6712, 15), r(512, 1));
        let got = divisibility_admissible(9, 1, &range);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].t_count, 512);
        assert_eq!(got[0].case, DivisibilityCase::Above);
        assert_eq!(got[0].t, Some(0));
        assert_eq!(got[0].subcode_dim, Some(9));
    }

    #[test]
    fn doubly_even_count_of_even_nine_dim_code() {
        // an even code (a = 1) whose doubly-even count exceeds 2916/7
        let range = RationalInterval::open_closed(r(2916, 7), r(512, 1));
        let got: Vec<u64> = divisibility_admissible(9, 1, &range)
            .iter()
            .map(|d| d.t_count)
            .collect();
        assert_eq!(got, vec![512]);
        // for a doubly-even code (a = 2) the same range still admits t = 1
        let got: Vec<u64> = divisibility_admissible(9, 2, &range)
            .iter()
            .map(|d| d.t_count)
            .collect();
        assert_eq!(got, vec![448, 512]);
        // and a bound above 448 forces 8-divisibility
        let range = RationalInterval::open_closed(r(47586, 100), r(512, 1));
        let got: Vec<u64> = divisibility_admissible(9, 2, &range)
            .iter()
            .map(|d| d.t_count)
            .collect();
        assert_eq!(got, vec![512]);
    }

    #[test]
    fn below_band_small_dimension() {
        let range = RationalInterval {
            lo: r(0, 1),
            lo_open: false,
            hi: r(8, 1),
            hi_open: true,
        };
        let got = divisibility_admissible(4, 1, &range);
        let vals: Vec<(u64, Option<u32>)> = got.iter().map(|d| (d.t_count, d.t)).collect();
        assert_eq!(vals, vec![(4, Some(1)), (6, Some(2))]);
        assert!(got.iter().all(|d| d.case == DivisibilityCase::Below));
        // alpha = beta = 2, so t <= beta and the subcode has dimension k - a - t
        assert_eq!(got[0].subcode_dim, Some(2));
        assert_eq!(got[1].subcode_dim, Some(1));
    }

    #[test]
    fn band_only_power_of_two_divisibility() {
        // k = 9, a = 1: band is exactly T = 256
        let range = RationalInterval::closed(r(250, 1), r(300, 1));
        let got = divisibility_admissible(9, 1, &range);
        let vals: Vec<u64> = got.iter().map(|d| d.t_count).collect();
        assert_eq!(vals, vec![256, 272, 288]);
        assert_eq!(got[0].case, DivisibilityCase::Band);
    }

    #[test]
    fn above_case_subcode_for_larger_a() {
        // k = 9, a = 2: t = a + 1 = 3 <= k - a - 1 = 6 gives a codimension-2 subcode
        let range = RationalInterval::closed(r(0, 1), r(512, 1));
        let got = divisibility_admissible(9, 2, &range);
        let t3 = got
            .iter()
            .find(|d| d.case == DivisibilityCase::Above && d.t == Some(3))
            .unwrap();
        assert_eq!(t3.t_count, 384 + 16);
        assert_eq!(t3.subcode_dim, Some(7));
        let t1 = got
            .iter()
            .find(|d| d.case == DivisibilityCase::Above && d.t == Some(1))
            .unwrap();
        assert_eq!(t1.subcode_dim, Some(8));
    }

    #[test]
    fn below_case_t_above_beta_formula() {
        // k = 12, a = 4: alpha = min(7, 5) = 5, beta = floor(9/2) = 4, so t = 5 > beta
        let range = RationalInterval::closed(r(0, 1), r(1 << 8, 1));
        let got = divisibility_admissible(12, 4, &range);
        let t5 = got.iter().find(|d| d.t == Some(5)).unwrap();
        assert_eq!(t5.t_count, 256 - 8);
        assert_eq!(t5.case, DivisibilityCase::Below);
        assert_eq!(t5.subcode_dim, Some(12 - 4 - 2));
    }

    #[test]
    fn empty_range_is_contradiction() {
        let range = RationalInterval::open_closed(r(512, 1), r(1000, 1));
        assert!(divisibility_admissible(9, 1, &range).is_empty());
        assert!(Rational::one() > Rational::zero());
    }

    #[test]
    fn even_counts() {
        assert_eq!(even_count_admissible(4), [8, 16]);
    }
}
