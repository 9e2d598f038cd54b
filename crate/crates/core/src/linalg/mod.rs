//! Exact linear algebra over Q.

mod matrix;
mod rational;

pub use matrix::{Matrix, Rref, SplitData};
pub use rational::Rational;
