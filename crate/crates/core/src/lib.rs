//! Exact real-rootedness, interlacing and Pólya frequency tools for
//! polynomials with rational coefficients.

pub mod combinatorics;
pub mod error;
pub mod operators;
pub mod pf;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod transforms;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Rational;
