//! Exact rational computation of Brezin-Gross-Witten intersection numbers.
//!
//! The crate is organised bottom-up: [`exactnum`] and [`partitions`] supply the
//! arithmetic and combinatorics, [`dvv`] and [`resolvent`] are two independent
//! evaluators of the numbers themselves, and [`series`], [`painleve`] and
//! [`kappa`] build derived objects on top. [`harness`] holds the checks, the
//! cache file format and numeric rendering used by the command-line tool.

pub mod dvv;
pub mod exactnum;
pub mod harness;
pub mod kappa;
pub mod painleve;
pub mod partitions;
pub mod resolvent;
pub mod series;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index vector: {0}")]
    InvalidIndex(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("comparison undecidable at available precision: {0}")]
    Undecidable(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use exactnum::Rational;
pub use partitions::IndexVector;
