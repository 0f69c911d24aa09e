//! Desk-scale laboratory for dyadic harmonic analysis.
//!
//! The crate builds finite, exactly-computable models of the objects that
//! drive sharp weighted norm inequalities for singular integrals:
//!
//! - randomly shifted dyadic cube systems with exact integer geometry
//!   ([`grid`]),
//! - Haar functions and analysis/synthesis of lattice functions ([`haar`]),
//! - dyadic shift operators, paraproducts and the Calderón–Zygmund
//!   decomposition ([`shift`]),
//! - dyadic A₂/A∞ weight characteristics and Carleson embedding checks
//!   ([`weight`]),
//! - discretized singular-integral bilinear forms and the Ahlfors–Beurling
//!   multiplier ([`operator`]),
//! - the dyadic representation of a singular integral as a sum of shifts and
//!   paraproducts over random grids ([`represent`]),
//! - two-weight testing constants, stopping-time splitting forests and
//!   level-set decay ([`twoweight`]).
//!
//! Everything is computed on bounded windows at finite resolution, so every
//! identity in sight is checkable either exactly or by Monte Carlo with an
//! explicit confidence radius.

pub mod error;
pub mod grid;
pub mod haar;
pub mod operator;
pub mod represent;
pub mod rng;
pub mod shift;
pub mod stats;
pub mod twoweight;
pub mod weight;

pub use error::{Error, Result};

/// Highest spatial dimension supported by the fixed-size index arrays.
pub const MAX_DIM: usize = 4;

/// Crate version string stamped into experiment reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
