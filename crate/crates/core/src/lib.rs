//! Galois conjugates of singular Siegel function values over imaginary
//! quadratic fields.
//!
//! For a field discriminant `d` and a level `N >= 2` the crate enumerates
//! the conjugates of `x = g_(0,1/N)(theta)^(-12N/gcd(6,N))` over the ray class
//! field modulo `N`, using explicit reciprocity matrices instead of any group
//! law. It then checks that `x` strictly dominates its conjugates in
//! absolute value (so a power of `x` generates a normal basis) and recovers
//! the integer minimal polynomial of `x` from the numerical conjugates.

pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod quadforms;
pub mod reciprocity;
pub mod siegel;
pub mod normal_basis;
