//! Matrix-level ground truth: positive charts on `N_+`, the Jacobi and
//! Givental factorizations, minors, Gauss decomposition and the
//! group-action check of the generators.
//!
//! The chart stores `tau = e^T`, so rational `tau` keeps every identity
//! exact. The shifted parameterization `T_{k,i} -> T_{k,i} - T_{N,i}`
//! coincides with this one once the top row is set to zero and is not
//! implemented separately.

mod action;
mod chart;
mod matrix;
mod minors;

pub use action::{verify_action_definition, FdSteps, TestFunction};
pub use chart::{chart_rng, matrix_from_givental, matrix_from_jacobi, random_chart, random_rational_chart, PositiveChart};
pub use matrix::{gauss_decompose, Field, Matrix, UnitriangularMatrix};
pub use minors::{check_total_positivity, check_total_positivity_with, verify_minor_formulas, MinorPattern, MAX_MINOR_RANK};
