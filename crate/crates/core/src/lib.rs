//! Exact colored braid group representations over multivariate Laurent
//! polynomial rings: Gassner (Fox calculus and Burau blocks), the weight-one
//! quantum sl2 action, colored BKL and colored Lawrence representations.

pub mod bkl;
pub mod braid;
pub mod error;
pub mod fox;
pub mod gassner;
pub mod graded;
pub mod harness;
pub mod lawrence;
pub mod matrix;
pub mod quantum;
pub mod ring;

pub use error::{Error, Result};
