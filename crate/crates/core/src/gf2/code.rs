use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use super::matrix::{mask, BitMatrix, Row};
use crate::canon::Certificate;
use crate::error::{Error, Result};
use crate::spectrum::WeightDistribution;

/// Largest dimension for which codewords are enumerated exhaustively.
pub const MAX_ENUM_DIM: usize = 28;

/// A codeword of length `len`, bit `j` = coordinate `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    pub bits: Row,
    pub len: usize,
}

impl Codeword {
    pub fn new(bits: Row, len: usize) -> Self {
        debug_assert_eq!(bits & !mask(len), 0);
        Self { bits, len }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&j| (self.bits >> j) & 1 == 1).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let m: BitMatrix = text.parse()?;
        if m.nrows() != 1 {
            return Err(Error::Parse {
                line: 2,
                column: 1,
                message: "expected a single row".into(),
            });
        }
        Ok(Self::new(m.row(0), m.ncols()))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if (self.bits >> j) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Coordinate-level transforms of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Puncture(usize),
    Shorten(usize),
    ExtendParity,
}

/// Result of restricting a code to the complement of a codeword's support.
#[derive(Clone, Debug)]
pub struct Residual {
    pub code: Code,
    /// `true` when `d > w/2`, so that the residual has dimension `k - 1`
    /// and minimum distance at least `d - floor(w/2)`.
    pub guaranteed: bool,
}

/// A binary linear code given by a full-rank generator matrix.
///
/// Weight distribution, minimum distance and certificate are computed on
/// first use and cached.
pub struct Code {
    generator: BitMatrix,
    weights: OnceLock<WeightDistribution>,
    min_distance: OnceLock<usize>,
    certificate: OnceLock<Certificate>,
}

impl Clone for Code {
    fn clone(&self) -> Self {
        Self {
            generator: self.generator.clone(),
            weights: self.weights.clone(),
            min_distance: self.min_distance.clone(),
            certificate: self.certificate.clone(),
        }
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code[{}, {}]\n{}", self.len(), self.dim(), self.generator)
    }
}

impl Code {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn new(generator: BitMatrix) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.nrows() {
            return Err(Error::RankDeficient {
                rows: generator.nrows(),
                rank,
            });
        }
        Ok(Self::from_full_rank(generator))
    }

    pub(crate) fn from_full_rank(generator: BitMatrix) -> Self {
        Self {
            generator,
            weights: OnceLock::new(),
            min_distance: OnceLock::new(),
            certificate: OnceLock::new(),
        }
    }

    /// The code spanned by `words`; the generator is the reduced row-echelon basis.
    pub fn span(len: usize, words: &[Row]) -> Result<Self> {
        let m = BitMatrix::from_rows(words.to_vec(), len)?;
        Ok(Self::from_full_rank(m.rref().reduced))
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.generator.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    /// Number of coordinates where some codeword is nonzero.
    pub fn effective_len(&self) -> usize {
        self.generator.support_size()
    }

    pub fn contains(&self, word: Row) -> bool {
        self.generator.row_space_contains(word)
    }

    fn check_budget(&self) -> Result<()> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(Error::DimensionOverBudget {
                k: self.dim(),
                max: MAX_ENUM_DIM,
            });
        }
        Ok(())
    }

    /// Visits all `2^k` codewords in Gray-code order of their messages,
    /// starting with the zero word. Each step is a single row XOR.
    pub fn for_each_codeword(&self, mut f: impl FnMut(Row)) -> Result<()> {
        self.check_budget()?;
        let rows = self.generator.rows();
        let mut word = 0u128;
        f(word);
        for i in 1u64..(1u64 << rows.len()) {
            word ^= rows[i.trailing_zeros() as usize];
            f(word);
        }
        Ok(())
    }

    /// All codewords, indexed by message (bit `i` of the index selects row `i`).
    pub fn codewords(&self) -> Result<Vec<Row>> {
        self.check_budget()?;
        let rows = self.generator.rows();
        let mut words = vec![0u128; 1 << rows.len()];
        for (i, &row) in rows.iter().enumerate() {
            let half = 1usize << i;
            for m in 0..half {
                words[half + m] = words[m] ^ row;
            }
        }
        Ok(words)
    }

    pub fn encode(&self, message: u64) -> Row {
        self.generator
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, _)| (message >> i) & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r)
    }

    /// Minimum nonzero weight, by Gray-code enumeration. The zero code reports 0.
    pub fn min_weight(&self) -> Result<usize> {
        if let Some(&d) = self.min_distance.get() {
            return Ok(d);
        }
        let mut best = usize::MAX;
        self.for_each_codeword(|w| {
            let wt = w.count_ones() as usize;
            if wt != 0 && wt < best {
                best = wt;
            }
        })?;
        if self.dim() > 0 && best == usize::MAX {
            // a full-rank generator never produces a zero nonzero-message word
            unreachable!("rank-deficient generator inside Code");
        }
        let d = if best == usize::MAX { 0 } else { best };
        Ok(*self.min_distance.get_or_init(|| d))
    }

    pub fn weight_distribution(&self) -> Result<&WeightDistribution> {
        if let Some(w) = self.weights.get() {
            return Ok(w);
        }
        let mut counts = vec![0u64; self.len() + 1];
        self.for_each_codeword(|w| counts[w.count_ones() as usize] += 1)?;
        let wd = WeightDistribution::from_counts_unchecked(self.len(), self.dim(), counts);
        Ok(self.weights.get_or_init(|| wd))
    }

    pub(crate) fn certificate_cell(&self) -> &OnceLock<Certificate> {
        &self.certificate
    }

    /// Restriction to the coordinates outside the support of `c`.
    pub fn residual(&self, c: Codeword) -> Result<Residual> {
        if c.len != self.len() {
            return Err(Error::NotACodeword);
        }
        if c.is_zero() {
            return Err(Error::ZeroWord);
        }
        if !self.contains(c.bits) {
            return Err(Error::NotACodeword);
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&j| (c.bits >> j) & 1 == 0)
            .collect();
        let restricted = self.generator.select_columns(&keep);
        let code = Code::from_full_rank(restricted.rref().reduced);
        let d = self.min_weight()?;
        Ok(Residual {
            code,
            guaranteed: 2 * d > c.weight(),
        })
    }

    pub fn transform(&self, t: Transform) -> Result<Code> {
        match t {
            Transform::Puncture(j) => {
                let m = self.generator.delete_column(j)?;
                Ok(Code::from_full_rank(m.rref().reduced))
            }
            Transform::Shorten(j) => {
                if j >= self.len() {
                    return Err(Error::IndexOutOfRange {
                        index: j,
                        len: self.len(),
                    });
                }
                let bit = 1u128 << j;
                let mut rows = self.generator.rows().to_vec();
                if let Some(p) = rows.iter().position(|r| r & bit != 0) {
                    let pivot = rows.remove(p);
                    for r in rows.iter_mut() {
                        if *r & bit != 0 {
                            *r ^= pivot;
                        }
                    }
                }
                let m = BitMatrix::from_rows(rows, self.len())?.delete_column(j)?;
                Ok(Code::from_full_rank(m))
            }
            Transform::ExtendParity => {
                let parity = self
                    .generator
                    .rows()
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, r)| acc | (((r.count_ones() & 1) as u64) << i));
                Ok(Code::from_full_rank(self.generator.push_column(parity)?))
            }
        }
    }

    /// The subcode spanned by `words`, each of which must lie in the code.
    pub fn subcode(&self, words: &[Codeword]) -> Result<Code> {
        for w in words {
            if w.len != self.len() || !self.contains(w.bits) {
                return Err(Error::NotACodeword);
            }
        }
        let rows: Vec<Row> = words.iter().map(|w| w.bits).collect();
        Code::span(self.len(), &rows)
    }

    /// Codewords of the given weight.
    pub fn words_of_weight(&self, weight: usize) -> Result<Vec<Codeword>> {
        let mut out = Vec::new();
        let n = self.len();
        self.for_each_codeword(|w| {
            if w.count_ones() as usize == weight {
                out.push(Codeword::new(w, n));
            }
        })?;
        Ok(out)
    }

    /// Applies a coordinate permutation: coordinate `j` of the result is coordinate `perm[j]` here.
    pub fn permute(&self, perm: &[usize]) -> Code {
        Code::from_full_rank(self.generator.select_columns(perm))
    }

    /// Whether both codes have the same length and the same row space.
    pub fn same_row_space(&self, other: &Code) -> bool {
        self.len() == other.len()
            && self.dim() == other.dim()
            && self.generator.rref().reduced == other.generator.rref().reduced
    }

    /// Random `[n, k]` code with a uniformly random full-rank generator.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<Code> {
        if k > n {
            return Err(Error::RankDeficient { rows: k, rank: n });
        }
        let m = mask(n);
        loop {
            let rows: Vec<Row> = (0..k).map(|_| rng.gen::<u128>() & m).collect();
            let g = BitMatrix::from_rows(rows, n)?;
            if g.rank() == k {
                return Ok(Code::from_full_rank(g));
            }
        }
    }

    /// Random even `[n, k]` code: a random `[n-1, k]` code extended by a parity bit.
    pub fn random_even<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<Code> {
        Code::random(rng, n - 1, k)?.transform(Transform::ExtendParity)
    }

    /// The same code under a random invertible change of basis.
    pub fn random_basis_change<R: Rng + ?Sized>(&self, rng: &mut R) -> Code {
        let k = self.dim();
        loop {
            let rows: Vec<Row> = (0..k)
                .map(|_| {
                    let sel: u64 = if k == 0 { 0 } else { rng.gen::<u64>() & ((1u64 << k) - 1) };
                    self.encode(sel)
                })
                .collect();
            let g = BitMatrix::from_rows(rows, self.len()).expect("same width");
            if g.rank() == k {
                return Code::from_full_rank(g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> Code {
        Code::new(text.parse().unwrap()).unwrap()
    }

    fn simplex3() -> Code {
        code("1010101\n0110011\n0001111\n")
    }

    #[test]
    fn repetition_min_weight() {
        assert_eq!(code("11111").min_weight().unwrap(), 5);
    }

    #[test]
    fn disjoint_rows() {
        assert_eq!(code("111000\n000111").min_weight().unwrap(), 3);
    }

    #[test]
    fn rank_deficient_rejected() {
        let err = Code::new("110\n011\n101\n".parse().unwrap()).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rows: 3, rank: 2 });
    }

    #[test]
    fn repetition_weights() {
        let wd = code("1111").weight_distribution().unwrap().clone();
        assert_eq!(wd.counts(), &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn simplex_weights() {
        // all 8 codewords: 0 and seven words of weight 4
        let c = simplex3();
        let words = c.codewords().unwrap();
        let mut by_hand = [0u64; 8];
        for w in &words {
            by_hand[w.count_ones() as usize] += 1;
        }
        assert_eq!(by_hand, [1, 0, 0, 0, 7, 0, 0, 0]);
        assert_eq!(c.weight_distribution().unwrap().counts(), &by_hand);
    }

    #[test]
    fn gray_and_indexed_enumeration_agree() {
        let c = simplex3();
        let mut gray = Vec::new();
        c.for_each_codeword(|w| gray.push(w)).unwrap();
        let mut idx = c.codewords().unwrap();
        gray.sort();
        idx.sort();
        assert_eq!(gray, idx);
    }

    #[test]
    fn residual_of_repetition_is_empty() {
        let c = code("1111");
        let r = c.residual(Codeword::new(0b1111, 4)).unwrap();
        assert_eq!(r.code.len(), 0);
        assert_eq!(r.code.dim(), 0);
    }

    #[test]
    fn residual_rejects_bad_words() {
        let c = simplex3();
        assert_eq!(c.residual(Codeword::new(0, 7)).unwrap_err(), Error::ZeroWord);
        assert_eq!(
            c.residual(Codeword::new(0b1, 7)).unwrap_err(),
            Error::NotACodeword
        );
    }

    #[test]
    fn residual_flags_small_distance() {
        // d = 3, w = 6 > 2d - 1: allowed but not guaranteed
        let c = code("111000\n000111");
        let r = c.residual(Codeword::new(0b111111, 6)).unwrap();
        assert!(!r.guaranteed);
        let r = c.residual(Codeword::new(0b000111, 6)).unwrap();
        assert!(r.guaranteed);
        assert_eq!((r.code.len(), r.code.dim()), (3, 1));
    }

    #[test]
    fn extend_parity_of_even_code_appends_zero_column() {
        let c = code("1100\n0110");
        let e = c.transform(Transform::ExtendParity).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(e.generator().column(4), 0);
        let mut a = c.weight_distribution().unwrap().counts().to_vec();
        a.push(0);
        assert_eq!(e.weight_distribution().unwrap().counts(), &a[..]);
    }

    #[test]
    fn puncture_repetition() {
        let p = code("1111").transform(Transform::Puncture(0)).unwrap();
        assert_eq!((p.len(), p.dim(), p.min_weight().unwrap()), (3, 1, 3));
    }

    #[test]
    fn shorten_simplex() {
        // the four codewords vanishing at a coordinate, that coordinate removed
        let c = simplex3();
        for j in 0..7 {
            let s = c.transform(Transform::Shorten(j)).unwrap();
            assert_eq!((s.len(), s.dim()), (6, 2));
            let mut oracle = [0u64; 7];
            for w in c.codewords().unwrap() {
                if (w >> j) & 1 == 0 {
                    oracle[w.count_ones() as usize] += 1;
                }
            }
            assert_eq!(oracle, [1, 0, 0, 0, 3, 0, 0]);
            assert_eq!(s.weight_distribution().unwrap().counts(), &oracle);
        }
        assert!(c.transform(Transform::Shorten(7)).is_err());
    }

    #[test]
    fn subcodes() {
        let c = simplex3();
        let zero = c.subcode(&[Codeword::new(0, 7)]).unwrap();
        assert_eq!(zero.dim(), 0);
        let rows: Vec<Codeword> = c
            .generator()
            .rows()
            .iter()
            .map(|&r| Codeword::new(r, 7))
            .collect();
        assert!(c.subcode(&rows).unwrap().same_row_space(&c));
        assert_eq!(
            c.subcode(&[Codeword::new(1, 7)]).unwrap_err(),
            Error::NotACodeword
        );
    }
}
