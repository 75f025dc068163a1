use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{Code, MAX_ENUM_DIM, MAX_LENGTH};
use crate::spectrum::griesmer;

/// Parameters of an exhaustive search.
///
/// Counts produced under a spec are inequivalent codes of exact length `n`
/// whose nonzero weights all lie in `weights`; repeated columns are allowed
/// and, with `full_support`, zero columns are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub weights: BTreeSet<usize>,
    /// Every weight must be divisible by this (1 for no requirement).
    pub divisor: usize,
    pub projective: bool,
    pub full_support: bool,
}

impl SearchSpec {
    pub fn new(k: usize, n_min: usize, n_max: usize, weights: impl IntoIterator<Item = usize>) -> Result<Self> {
        let spec = Self {
            k,
            n_min,
            n_max,
            weights: weights.into_iter().collect(),
            divisor: 1,
            projective: false,
            full_support: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Minimum distance `d` with the listed weights forbidden.
    pub fn with_distance(k: usize, n_min: usize, n_max: usize, d: usize, forbidden: &[usize]) -> Result<Self> {
        Self::new(k, n_min, n_max, (d..=n_max).filter(|w| !forbidden.contains(w)))
    }

    pub fn even(mut self) -> Self {
        self.divisor = 2;
        self
    }

    pub fn divisible_by(mut self, delta: usize) -> Self {
        self.divisor = delta.max(1);
        self
    }

    pub fn projective(mut self, yes: bool) -> Self {
        self.projective = yes;
        self
    }

    pub fn full_support(mut self, yes: bool) -> Self {
        self.full_support = yes;
        self
    }

    /// The same weight set at another dimension and length range.
    pub fn at(&self, k: usize, n_min: usize, n_max: usize) -> Self {
        Self {
            k,
            n_min,
            n_max,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() || self.weights.contains(&0) {
            return Err(Error::InvalidSpec("weight set must be nonempty and positive".into()));
        }
        if self.k == 0 || self.k > MAX_ENUM_DIM {
            return Err(Error::InvalidSpec(format!("dimension {} outside 1..={MAX_ENUM_DIM}", self.k)));
        }
        if self.n_min > self.n_max || self.n_max > MAX_LENGTH {
            return Err(Error::InvalidSpec(format!(
                "length range {}..={} invalid (cap {MAX_LENGTH})",
                self.n_min, self.n_max
            )));
        }
        if self.divisor == 0 {
            return Err(Error::InvalidSpec("divisor must be positive".into()));
        }
        Ok(())
    }

    /// Allowed nonzero weights for length `n`, ascending.
    pub fn allowed(&self, n: usize) -> Vec<usize> {
        self.weights
            .iter()
            .copied()
            .filter(|&w| w <= n && w % self.divisor == 0)
            .collect()
    }

    pub fn min_weight(&self) -> usize {
        self.weights
            .iter()
            .copied()
            .find(|w| w % self.divisor == 0)
            .unwrap_or(usize::MAX)
    }

    /// Griesmer lower bound on the length of a `k`-dimensional code under this spec.
    pub fn min_length(&self, k: usize) -> usize {
        match self.min_weight() {
            usize::MAX => usize::MAX,
            d => griesmer(k, d as u64) as usize,
        }
    }

    /// Whether `code` satisfies the spec at its own length.
    pub fn accepts(&self, code: &Code) -> Result<bool> {
        let n = code.len();
        if code.dim() != self.k || n < self.n_min || n > self.n_max {
            return Ok(false);
        }
        let cols = code.generator().columns();
        if self.full_support && cols.contains(&0) {
            return Ok(false);
        }
        if self.projective {
            let mut sorted = cols.clone();
            sorted.sort_unstable();
            if sorted.contains(&0) || sorted.windows(2).any(|w| w[0] == w[1]) {
                return Ok(false);
            }
        }
        let allowed = self.allowed(n);
        let wd = code.weight_distribution()?;
        Ok(wd.support().iter().all(|w| allowed.binary_search(w).is_ok()))
    }

    /// The `flags=` field of a database header.
    pub fn flags(&self) -> String {
        let mut f = Vec::new();
        if self.full_support {
            f.push("full".to_string());
        }
        if self.projective {
            f.push("proj".to_string());
        }
        if self.divisor > 1 {
            f.push(format!("div{}", self.divisor));
        }
        if f.is_empty() {
            "none".into()
        } else {
            f.join(",")
        }
    }

    pub fn weights_field(&self) -> String {
        self.weights
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `W=` and `flags=` fields back into a spec at `(k, n)`.
    pub fn from_fields(k: usize, n: usize, weights: &str, flags: &str) -> Result<Self> {
        let ws = weights
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Database(format!("bad weight {s:?}"))))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut spec = Self::new(k, n, n, ws)?.full_support(false);
        for f in flags.split(',') {
            match f {
                "full" => spec.full_support = true,
                "proj" => spec.projective = true,
                "none" | "" => {}
                other => match other.strip_prefix("div").and_then(|d| d.parse().ok()) {
                    Some(d) => spec.divisor = d,
                    None => return Err(Error::Database(format!("unknown flag {other:?}"))),
                },
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for SearchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} n={}..{} W={} flags={}",
            self.k,
            self.n_min,
            self.n_max,
            self.weights_field(),
            self.flags()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_spec() {
        let s = SearchSpec::with_distance(4, 1, 16, 7, &[8]).unwrap();
        assert_eq!(s.allowed(12), vec![7, 9, 10, 11, 12]);
        assert_eq!(s.min_length(4), 7 + 4 + 2 + 1);
        let e = SearchSpec::with_distance(5, 1, 46, 22, &[24]).unwrap().even();
        assert_eq!(e.allowed(30), vec![22, 26, 28, 30]);
    }

    #[test]
    fn field_round_trip() {
        let s = SearchSpec::new(3, 40, 40, [20, 24, 28, 32]).unwrap().divisible_by(4);
        let back = SearchSpec::from_fields(3, 40, &s.weights_field(), &s.flags()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SearchSpec::new(0, 1, 2, [1]).is_err());
        assert!(SearchSpec::new(2, 5, 4, [1]).is_err());
        assert!(SearchSpec::new(2, 1, 4, []).is_err());
    }
}
