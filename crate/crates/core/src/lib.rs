//! Exact construction and verification of the Cramer varieties `Cr(r, r+s, s)`.
//!
//! The variety lives in the space of triples `(M, N, ω)` with `M` an `r x t`
//! matrix, `N` a `t x s` matrix (`t = r + s`) and `ω` a scalar. It is cut out by
//! `MN = 0` together with the matching of the maximal minors of `M` (times `ω`)
//! against the complementary maximal minors of `N`, and is the closure of the
//! `GL(r) × GL(t) × GL(s)`-orbit of `((I | 0), (0 / I), 1)`.
//!
//! Everything is computed over ℚ with exact arithmetic.

pub mod charts;
pub mod error;
pub mod exact;
pub mod export;
pub mod group;
pub mod ogr;
pub mod point;
pub mod poly;
pub mod variety;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use point::ConfigurationPoint;
