//! Gaussian-filtered norms of compactly supported measures and generalized
//! (Renyi) dimensions.
//!
//! The crate works with finite atomic measures ([`measures`]) filtered by
//! radial kernels ([`kernels`]). On top of that it provides
//!
//! * Lebesgue and `mu`-norms of `g_eps * mu` with their analytic scale
//!   derivatives and bounds ([`filterops`]),
//! * seven partition functions from which Renyi dimensions are read off
//!   ([`partitions`], [`dimension`]),
//! * power-law and geometric scale schedules and the growth of adjacent-scale
//!   norm differences ([`schedule`]),
//! * a command-line front end ([`cli`]).

pub mod cli;
pub mod dimension;
pub mod error;
pub mod filterops;
mod grid;
pub mod kernels;
pub mod measures;
pub mod partitions;
pub mod schedule;
pub mod sum;

pub use error::{Error, Result};
pub use filterops::QuadratureSpec;
pub use kernels::RadialKernel;
pub use measures::DiscreteMeasure;

pub use partitions::PartitionKind;
