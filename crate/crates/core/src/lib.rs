//! Witt vectors over finite fields, Teichmüller sum identities, and the
//! characteristic-one analogue built on max-plus semirings.
//!
//! The crate is `no_std` and only needs `alloc`. Exact algebra uses
//! arbitrary-precision integers and rationals; the analytic parts work in
//! `f64` through `libm`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod asymptotics;
pub mod char_one;
pub mod fq;
pub mod padic;
pub mod poly;
pub mod run_repr;
pub mod series;
pub mod symmetrize;
pub mod witt;
pub mod witt_poly;

pub use fq::{FqContext, FqElement, FqError};
pub use padic::{PadicError, PadicTrunc};
pub use poly::{MultiPoly, PolyError, QPoly, ZPoly};
pub use series::{CoeffRing, SeriesError, TruncSeries};
pub use witt_poly::{ReducedFractionP, WittCoeffTable, WittPolyCache, WittPolyError};
pub use witt::{TeichSumReport, WittError, WittLaws, WittRing, WittVector};
