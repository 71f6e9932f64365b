#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod bogoliubov;
pub mod config;
pub mod detector;
pub mod error;
pub mod export;
pub mod feasibility;
pub mod modes;
pub mod quad;
pub mod richardson;
pub mod spacetime;
pub mod special;
pub mod vacuum;

pub use error::{Error, Result};
