//! Exact rational linear algebra and linear programming.
//!
//! Everything here is dense and exact. Problem sizes in this crate are tiny
//! (a handful of states and signals), so the engine favours a transparent
//! tableau over anything clever.

mod linalg;
mod simplex;

pub use linalg::{
    affine_dependence, linear_solve, nullspace, rank, AffineDependence, LinearSolution, Matrix,
};
pub use simplex::{lp_solve, Constraint, LinearProgram, LpOutcome, LpStatus, Sense, VarDomain};
