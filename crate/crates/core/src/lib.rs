#![allow(clippy::needless_range_loop)]

pub mod blowup;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod exactpoly;
pub mod linsys;
pub mod rational;
pub mod resolution;

pub use error::{Error, Result};
