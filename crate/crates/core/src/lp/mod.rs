//! Exact linear programming over weight-distribution variables.
//!
//! The solver is generic over [`Scalar`]; every bound reported elsewhere in
//! the crate comes from the exact [`crate::Rational`] instantiation.

mod linsys;
mod mw;
mod program;
mod scalar;
mod simplex;
mod text;
mod tighten;

pub use linsys::{solve_linear_system, LinearSolution};
pub use mw::{
    a_var, a_vars, b_var, build_mw_lp, named_expr, normalized_identity, var_weight, ExtraConstraint,
    NamedObjective,
};
pub use program::{Constraint, Direction, LinearExpr, LinearProgram, Objective, Sense};
pub use scalar::{format_rational, parse_rational, Scalar};
pub use simplex::{LpCertificate, LpOutcome, Status};
pub use text::{format_outcome, parse_lp, write_lp};
pub use tighten::{descending_weight_order, tighten_integer, IntBounds, Tightened};
