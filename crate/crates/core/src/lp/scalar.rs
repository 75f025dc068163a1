use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Ordered field the simplex and elimination routines run over.
///
/// Sign tests go through [`Scalar::is_pos`] and friends so inexact types can
/// apply a tolerance; exact types use plain comparisons.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync {
    /// Whether arithmetic is exact (results can serve as certificates).
    const EXACT: bool;

    fn from_bigint(v: &BigInt) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn floor_value(&self) -> Self;

    fn ceil_value(&self) -> Self;

    fn is_pos(&self) -> bool {
        self > &Self::zero()
    }

    fn is_neg(&self) -> bool {
        self < &Self::zero()
    }

    fn near_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn ceil_value(&self) -> Self {
        self.ceil()
    }
}

const F64_TOL: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        f64::from_i64(num).unwrap_or(f64::NAN) / den as f64
    }

    fn floor_value(&self) -> Self {
        (self + F64_TOL).floor()
    }

    fn ceil_value(&self) -> Self {
        (self - F64_TOL).ceil()
    }

    fn is_pos(&self) -> bool {
        *self > F64_TOL
    }

    fn is_neg(&self) -> bool {
        *self < -F64_TOL
    }

    fn near_zero(&self) -> bool {
        self.abs() <= F64_TOL
    }
}

/// Formats an exact rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or a decimal like `1011.2` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let mag = int.abs() * &scale + f;
        let num = if negative { -mag } else { mag };
        return Some(BigRational::new(num, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        let r = parse_rational("6712/15").unwrap();
        assert_eq!(format_rational(&r), "6712/15");
        assert_eq!(parse_rational("1011.2").unwrap(), BigRational::from_ratio(5056, 5));
        assert_eq!(parse_rational("-0.5").unwrap(), BigRational::from_ratio(-1, 2));
        assert_eq!(parse_rational("-3").unwrap(), BigRational::from_ratio(-3, 1));
        assert_eq!(parse_rational("4/-2").unwrap(), BigRational::from_ratio(-2, 1));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn floors() {
        let r = BigRational::from_ratio(9, 4);
        assert_eq!(r.floor_value(), BigRational::from_ratio(2, 1));
        assert_eq!(r.ceil_value(), BigRational::from_ratio(3, 1));
        assert_eq!((2.0f64 - 1e-12).floor_value(), 2.0);
    }
}
