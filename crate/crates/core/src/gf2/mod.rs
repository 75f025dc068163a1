//! Bit-packed linear algebra over GF(2) and elementary code constructions.

mod code;
mod matrix;

pub use code::{Code, Codeword, Residual, Transform, MAX_ENUM_DIM};
pub use matrix::{BitMatrix, Row, Rref, MAX_LENGTH};
