//! The generalized equation `y' + P y + Q y^2 = R`: linearizing
//! transforms, back-maps, the quick criterion and family generators.
//!
//! | id | `l0`            | `s0`              | `y`                       |
//! |----|-----------------|-------------------|---------------------------|
//! | T3 | `Q'/Q - P`      | `Q R`             | `-s/(Q l)`                |
//! | T4 | `R'/R + P`      | `Q R`             | `-R l/s`                  |
//! | T5 | `R'/R - P`      | `R (Q - (P/R)')`  | `R l/(-s + P l)`          |
//! | T6 | `P + Q'/Q`      | `Q ((P/Q)' + R)`  | `(-s - P l)/(Q l)`        |
//!
//! with `s = s_{n-1}`, `l = lambda_{n-1}`.

mod equation;
mod family;
mod solve;

pub use crate::solution::TransformId;
pub use equation::RiccatiEquation;
pub use family::{
    generate_family, generate_family_t3, generate_family_t3_r, generate_family_t5_r,
    generate_family_t6, Family, FamilyKind, FamilyOptions,
};
pub use solve::{
    back_map, quick_particular, solve, solve_branches, solve_transform, to_linear, to_linear_exprs,
    Strategy,
};
