pub mod cli;
pub mod config;
pub mod distribution;
pub mod encoding;
pub mod error;
pub mod fourier;
pub mod galois;
pub mod padic;
pub mod sampling;
pub mod selftest;
pub mod series;
pub mod tcoord;
pub mod weight;

pub use error::{Error, Result};
