//! Exhaustive classification of codes with restricted weight sets.

mod augment;
mod db;
mod oracle;
mod scan;
mod spec;

pub use augment::{classify, extend_dimension, lp_feasible, Classification, ClassifyOptions};
pub use db::{CodeDatabase, Record};
pub use oracle::{brute_oracle, ORACLE_MAX_DIM};
pub use scan::{column_replacement_scan, ScanReport};
pub use spec::SearchSpec;
