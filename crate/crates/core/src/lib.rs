//! Number-theoretic kernel for classifying congruent elliptic curves
//! `y^2 = x^3 - n^2 x` with rank zero and 2-primary Shafarevich-Tate group
//! `(Z/2)^{2k}`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is a pure function of
//! its inputs, so results may be computed concurrently.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cassels;
pub mod classgroup;
pub mod classify;
pub mod error;
pub mod f2linalg;
pub mod genus;
pub mod ntheory;
pub mod selmer;

pub use error::{Error, Result};
pub use f2linalg::{BitMatrix, BitVector};
pub use ntheory::{OddPrime, SquarefreeInteger};
