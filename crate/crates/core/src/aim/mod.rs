//! The asymptotic iteration method for `u'' = l0 u' + s0 u`:
//!
//! ```text
//! lambda_n = lambda_{n-1}' + s_{n-1} + l0 lambda_{n-1}
//! s_n      = s_{n-1}' + s0 lambda_{n-1}
//! delta_n  = lambda_n s_{n-1} - lambda_{n-1} s_n
//! ```
//!
//! starting from `lambda_{-1} = 1`, `s_{-1} = 0`. When `delta_n` vanishes the
//! simple Riccati equations `y' - l0 y +- y^2 = +-s0` have the solution
//! `y = -+ s_{n-1}/lambda_{n-1}`.

mod linear;
mod solve;
mod termination;
mod trace;

pub use linear::{general_solution_numeric, linear_solution, GeneralSample, LinearSolution};
pub use solve::{
    exponent_parameters, run, simple_residual, solve_branch, solve_simple, solve_theorem1,
    solve_theorem2, terminal, SimpleForm, SolveOptions, Terminal,
};
pub use termination::{branches, find_termination, Branch, Termination};
pub use trace::{
    aim_iterate, aim_iterate_with, AimOptions, AimTrace, DEFAULT_DEGREE_BOUND, DEFAULT_N_MAX,
};
