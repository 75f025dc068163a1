//! Binary linear codes: weight spectra, MacWilliams transforms, exact LP
//! bounds, canonical forms and isomorph-free classification.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod gf2;
pub mod lp;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, Code, Codeword};
pub use spectrum::WeightDistribution;

/// Exact rational scalar used for every reported bound.
pub type Rational = num_rational::BigRational;

/// Linear program over exact rationals.
pub type ExactProgram = lp::LinearProgram<Rational>;

/// Linear program over `f64`, for quick screening only.
pub type FloatProgram = lp::LinearProgram<f64>;
