//! Height computation: lower bounds, an exhaustive reference solver for
//! small instances, and the optimal search solver.

pub mod bounds;
pub mod exact;
pub mod oracle;

pub use bounds::{lower_bounds, Bounds};
pub use exact::{solve_exact, Partial, Solution, SolveOutcome, SolveStats, SolverOptions};
pub use oracle::{solve_oracle, OracleConfig, OracleError};
