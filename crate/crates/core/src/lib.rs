//! Primes in Beatty sequences `⌊αn + β⌋`: exact irrational arithmetic,
//! membership, a parallel von Mangoldt sieve, weighted counting sums with
//! their main terms, smoothed exponential sums over primes, and discrepancy.
//!
//! Floating-point code is generic over [`num::Float`] (`f32`, `f64`); the
//! aliases below fix the scalar at `f64`.
//!
//! ```
//! use beatty_core::{BeattyParams, ExactReal, Irrational};
//!
//! let b = BeattyParams::new(Irrational::sqrt(2).unwrap(), ExactReal::integer(0)).unwrap();
//! assert_eq!(b.generate(5).unwrap(), vec![1, 2, 4, 5, 7]);
//! assert_eq!(b.is_member(4).unwrap(), Some(3));
//! ```

pub mod beatty;
pub mod counting;
pub mod error;
pub mod expsum;
pub mod irrational;
pub mod num;
pub mod sieve;

pub use beatty::{BeattyParams, Decomposition, SubSequence};
pub use counting::{Mode, MainTermKind, SumSpec, SweepConfig};
pub use error::{Error, Result};
pub use irrational::{ExactReal, Irrational};
pub use sieve::{build_table, MangoldtTable, ResidueClass};

pub type PsiDelta64 = expsum::PsiDelta<f64>;
pub type PsiDelta32 = expsum::PsiDelta<f32>;
pub type VerificationReport64 = counting::VerificationReport<f64>;
pub type ReportRow64 = counting::ReportRow<f64>;
pub type IdentityCheck64 = expsum::IdentityCheck<f64>;
pub type Complex64 = num_complex::Complex<f64>;
