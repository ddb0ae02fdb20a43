//! Exact computation of link invariants from diagrams.
//!
//! The crate is organised around two independent engines and the
//! constructions that feed them:
//!
//! - [`poly`] — integer Laurent polynomials in one and two variables,
//!   with derivative and log-derivative evaluation at `t = 1`.
//! - [`slices`] — Morse/slice presentations of string links and the
//!   operations on them (stacking, mirroring, deletion, cabling).
//! - [`diagram`] — planar link diagrams (PD form), closure and
//!   band-sum constructions, and Reidemeister I/II reduction.
//! - [`homflypt`] — skein-tree evaluation of the HOMFLYPT polynomial.
//! - [`magnus`] — truncated non-commutative power series.
//! - [`milnor`] — Milnor invariants of string links via the Magnus
//!   expansion of longitudes.
//! - [`theorems`] — both sides of the band-sum formulas relating the
//!   two engines, with hypothesis checking.
//! - [`builtins`] — a small corpus of named links and string links
//!   used throughout the tests and the CLI.
//!
//! Everything is exact integer (or exact rational) arithmetic; there is
//! no floating point anywhere. The crate is `no_std` + `alloc`; IO,
//! parsing and the CLI live in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod builtins;
pub mod diagram;
pub mod homflypt;
pub mod magnus;
pub mod milnor;
pub mod poly;
pub mod rat;
pub mod scene;
pub mod slices;
pub mod theorems;
