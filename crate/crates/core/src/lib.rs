//! Finite Laguerre and Minkowski planes over GF(q), two geometric ciphers built
//! on them, and exhaustive analysis tooling for both.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod field;
pub mod laguerre;
pub mod laguerre_cipher;
pub mod minkowski;
pub mod minkowski_cipher;
pub mod report;

pub use error::{Error, Result};
