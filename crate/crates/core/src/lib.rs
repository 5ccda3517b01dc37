//! Dual graphs of special fibres of semistable bihyperelliptic curves,
//! computed from chromatic cluster pictures or from polynomial data.

pub mod arithmetic;
pub mod classify;
pub mod cli;
pub mod error;
pub mod frobenius;
pub mod model;
pub mod picture;
pub mod verify;

pub use error::{Error, Result};
