//! Exact-arithmetic workbench for the Ogg–Ligozat modular units on X_0(N)
//! and X_0^+(N) at prime levels N ≡ 1 (mod 4).

pub mod arith;
pub mod cli;
pub mod error;
pub mod exact;
pub mod galois;
pub mod newforms;
pub mod param;
pub mod relation;
pub mod units;
pub mod zeros;

pub use error::{Error, Result};
