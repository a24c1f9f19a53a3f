//! Decision procedures for coarse proximities, asymptotic resemblance and
//! coarse normality over exactly representable subsets of ℤ and ℚ≥0.

pub mod backends;
pub mod cli;
pub mod error;
pub mod harness;
pub mod normality;
pub mod rat;
pub mod relations;
pub mod setalg_q;
pub mod setalg_z;

pub use error::{Error, Result};
