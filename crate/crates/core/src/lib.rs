pub mod algebra;
pub mod cli;
pub mod delta;
mod error;
pub mod expr;
pub mod harmonic;
pub mod lorentz;
pub mod report;
pub mod sampling;
pub mod spinor;
pub mod split;
pub mod taylor;
pub mod verify;

pub use error::{Error, Result};
