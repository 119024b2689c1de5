//! Hellinger-volume toolbox and exact number-on-the-forehead protocol
//! simulator, with checkable forms of the inequalities that connect them.

pub mod andk;
pub mod cli;
pub mod error;
pub mod hellinger;
pub mod prob;
pub mod protocol;
pub mod sampling;

pub use error::{Error, Result};
