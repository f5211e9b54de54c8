//! Resolution graphs, curvetta germs, planar Lefschetz fibrations and
//! arrangement certificates for rational surface singularities with reduced
//! fundamental cycle.

#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod braid;
pub mod error;
pub mod germ;
pub mod lefschetz;
pub mod mcg;
pub mod plumbing;
pub mod sample;
pub mod scott;
pub mod wiring;

pub use error::{Error, Result};
