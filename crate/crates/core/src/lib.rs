pub mod analysis;
pub mod classical;
pub mod cli;
pub mod divergence;
pub mod error;
pub mod freeder;
pub mod linear;
pub mod trees;

pub use error::{Error, Result};
