use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported code length.
pub const MAX_LENGTH: usize = 128;

/// One row of a [`BitMatrix`]; bit `j` holds column `j`.
pub type Row = u128;

/// Dense matrix over GF(2) with at most [`MAX_LENGTH`] columns.
///
/// Rows are stored as single `u128` words. Bits at positions `>= cols` are
/// always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<Row>,
    cols: usize,
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The nonzero rows of the reduced matrix.
    pub reduced: BitMatrix,
    pub rank: usize,
    /// Pivot column of each reduced row, strictly increasing.
    pub pivots: Vec<usize>,
}

#[inline]
pub(crate) fn mask(cols: usize) -> Row {
    if cols >= 128 {
        !0
    } else {
        (1u128 << cols) - 1
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_rows(vec![0; rows], cols)
    }

    pub fn identity(k: usize) -> Result<Self> {
        Self::from_rows((0..k).map(|i| 1u128 << i).collect(), k)
    }

    /// Builds a matrix from packed rows, rejecting stray bits beyond `cols`.
    pub fn from_rows(rows: Vec<Row>, cols: usize) -> Result<Self> {
        if cols > MAX_LENGTH {
            return Err(Error::TooManyColumns {
                cols,
                max: MAX_LENGTH,
            });
        }
        let m = mask(cols);
        if let Some(j) = rows.iter().position(|r| r & !m != 0) {
            return Err(Error::IndexOutOfRange {
                index: 127 - (rows[j] & !m).leading_zeros() as usize,
                len: cols,
            });
        }
        Ok(Self { rows, cols })
    }

    /// Builds a `k`-row matrix from column values; bit `i` of a column value is row `i`.
    pub fn from_columns(k: usize, columns: &[u64]) -> Result<Self> {
        if columns.len() > MAX_LENGTH {
            return Err(Error::TooManyColumns {
                cols: columns.len(),
                max: MAX_LENGTH,
            });
        }
        let mut rows = vec![0u128; k];
        for (j, &c) in columns.iter().enumerate() {
            if k < 64 && c >> k != 0 {
                return Err(Error::IndexOutOfRange {
                    index: 63 - c.leading_zeros() as usize,
                    len: k,
                });
            }
            for (i, row) in rows.iter_mut().enumerate() {
                if (c >> i) & 1 == 1 {
                    *row |= 1u128 << j;
                }
            }
        }
        Ok(Self {
            rows,
            cols: columns.len(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Row {
        self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.cols, "column {j} out of range");
        if value {
            self.rows[i] |= 1u128 << j;
        } else {
            self.rows[i] &= !(1u128 << j);
        }
    }

    /// Column `j` as an integer with row 0 in the least significant bit.
    ///
    /// Only meaningful for matrices with at most 64 rows.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | ((((r >> j) & 1) as u64) << i))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Number of columns that are not identically zero.
    pub fn support_size(&self) -> usize {
        self.rows.iter().fold(0u128, |acc, r| acc | r).count_ones() as usize
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let bit = 1u128 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Rref {
            reduced: BitMatrix {
                rows,
                cols: self.cols,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Whether `word` lies in the row space.
    pub fn row_space_contains(&self, word: Row) -> bool {
        if word & !mask(self.cols) != 0 {
            return false;
        }
        let rref = self.rref();
        let mut w = word;
        for (row, &p) in rref.reduced.rows.iter().zip(&rref.pivots) {
            if (w >> p) & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    /// New matrix whose column `j` is column `perm[j]` of `self`.
    pub fn select_columns(&self, perm: &[usize]) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                perm.iter()
                    .enumerate()
                    .fold(0u128, |acc, (j, &src)| acc | (((r >> src) & 1) << j))
            })
            .collect();
        BitMatrix {
            rows,
            cols: perm.len(),
        }
    }

    /// Drops column `j`, shifting higher columns down.
    pub fn delete_column(&self, j: usize) -> Result<BitMatrix> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        let low = mask(j);
        let rows = self
            .rows
            .iter()
            .map(|&r| (r & low) | ((r >> 1) & !low))
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols - 1,
        })
    }

    /// Appends a column given as an integer (row 0 in bit 0).
    pub fn push_column(&self, column: u64) -> Result<BitMatrix> {
        if self.cols == MAX_LENGTH {
            return Err(Error::TooManyColumns {
                cols: self.cols + 1,
                max: MAX_LENGTH,
            });
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| r | ((((column >> i) & 1) as u128) << self.cols))
            .collect();
        Ok(BitMatrix {
            rows,
            cols: self.cols + 1,
        })
    }

    /// Row-major text: one line per row, one `0`/`1` character per column.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.cols + 1));
        for r in &self.rows {
            for j in 0..self.cols {
                s.push(if (r >> j) & 1 == 1 { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    /// Parses `k` lines of equal length over `{0,1}`. Blank lines and lines
    /// starting with `#` are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut cols: Option<usize> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let mut row = 0u128;
            let mut len = 0;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' if j < MAX_LENGTH => row |= 1u128 << j,
                    '1' => {}
                    _ => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column: j + 1,
                            message: format!("unexpected character {ch:?}, expected 0 or 1"),
                        })
                    }
                }
                len = j + 1;
            }
            if len > MAX_LENGTH {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: MAX_LENGTH + 1,
                    message: format!("row longer than {MAX_LENGTH} columns"),
                });
            }
            match cols {
                None => cols = Some(len),
                Some(c) if c != len => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        column: len.min(c) + 1,
                        message: format!("row has {len} columns, expected {c}"),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        let cols = cols.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "no matrix rows found".into(),
        })?;
        BitMatrix::from_rows(rows, cols)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.rows.len(), self.cols, self.to_text())
    }
}
