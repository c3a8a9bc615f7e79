//! Exact and numerical tools for deciding whether a reductive subalgebra
//! inclusion `h ⊂ g` is cramped.

pub mod branching;
pub mod crampedness;
pub mod error;
pub mod ghcsupport;
pub mod lie_algebra;
pub mod liecore;
pub mod momentgeo;
pub mod rational;

pub use error::{Error, Result};
