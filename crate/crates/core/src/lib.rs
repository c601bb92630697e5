//! Power-series arithmetic over the complex numbers built on blockwise FFT
//! algorithms for the square root and the reciprocal.
//!
//! Every transform is charged to a caller-supplied [`TransformLedger`], so the
//! transform counts of the block algorithms can be checked as exact integers.

pub mod baselines;
pub mod bench;
pub mod blockwise;
pub mod error;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod recip;
pub mod rng;
pub mod selftest;
pub mod sqrt;
pub mod transform;

pub use blockwise::{BlockSeries, BlockTerm, CacheView, Sign, TransformCache};
pub use error::{Result, SeriesError};
pub use poly::Poly;
pub use recip::{recip, RecipPlan};
pub use sqrt::{sqrt, sqrt_rem, SqrtPlan, SqrtRem};
pub use transform::{FftEngine, Phase, Spectrum, TransformLedger};
