//! Levelt–Turrittin decomposition of formal differential modules and the
//! Dirac divisor attached to their exponential parts.

pub mod error;
pub mod cli;
pub mod diffop;
pub mod dilatation;
pub mod exactalg;
pub mod invariant;
pub mod parse;
pub mod puiseux;
pub mod turrittin;

pub use error::{Error, Result};
