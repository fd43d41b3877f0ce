//! Lucas-sequence primality testing, pseudoprime counting, prime generation
//! and error-probability bounds for random-parameter strong Lucas tests.

pub mod bounds;
pub mod counting;
pub mod error;
pub mod generation;
pub mod integer_kernel;
pub mod lucas;

pub use error::{Error, Result};
pub use integer_kernel::{Factorization, Natural};
pub use lucas::{DMethod, EvenOddSplit, LucasParams, Verdict};
