//! Energy-saving scheduling for a single crane on a one-dimensional slot
//! line.
//!
//! Each job moves a container from an origin slot to a destination slot.
//! Lowering a container stores energy that can pay for the next lift if the
//! crane travels at most `buffer` slots in between; otherwise the lift costs
//! one unit. The solvers here minimize the number of paid lifts:
//!
//! - [`eulerian::solve_zero_buffer`]: exact, linear time, `buffer = 0`.
//! - [`twolevel::approx_solve`]: additive approximation for any buffer,
//!   exact when `k = n`.
//! - [`bounded_dp::solve_bounded`] / [`bounded_dp::solve_unit`]: exact
//!   sweep when buffer and job lengths are small.
//! - [`pathcover::exact_subset_dp`]: exact subset DP for small `n`.
//! - [`pathcover::solve_acyclic`]: exact via bipartite matching when the
//!   interval digraph has no cycles.
//! - [`model::brute_force_opt`]: exhaustive reference.

pub mod bounded_dp;
pub mod dot;
pub mod dsu;
pub mod error;
pub mod eulerian;
pub mod model;
pub mod pathcover;
pub mod twolevel;

pub use error::{Error, Result};
pub use model::{
    brute_force_opt, brute_force_opt_capped, evaluate_energy, generate_instance, parse_instance,
    parse_schedule, serialize_instance, serialize_schedule, Instance, Job, Schedule, Slot,
};
