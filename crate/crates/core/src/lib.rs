//! Closed-form solutions of Riccati equations `y' + P y + Q y^2 = R` by the
//! asymptotic iteration method, with exact symbolic certification.

pub mod aim;
pub mod error;
pub mod fixtures;
pub mod hyper;
pub mod numeric;
pub mod riccati;
pub mod solution;
pub mod symcore;
pub mod verify;

pub use error::{Error, Result};
pub use solution::{Method, Solution, TransformId};
