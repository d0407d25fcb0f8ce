//! Guessing, conversion, closure and fast evaluation for P-recursive sequences
//! and D-finite power series, with exact rational arithmetic throughout.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;

pub use error::{HoloError, Result};
pub mod linalg;
pub mod polykernel;
pub mod ore;
pub mod series;
pub mod relation;
pub mod convert;
pub mod eval;
pub mod closure;
pub mod algebraic;
pub mod guess;
pub mod casestudy;
pub mod io;
pub mod cli;
