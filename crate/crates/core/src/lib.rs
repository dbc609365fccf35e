//! Frobenius complexes of finitely generated submonoids of `ℕ^d`.
//!
//! The Frobenius complex of `λ` is the order complex of the open interval
//! `(0, λ)` in the divisibility order; its reduced Betti numbers give the Tor
//! dimensions `β_i(λ) = β̃_{i-2}`. On top of that the crate builds truncated
//! multigraded Poincaré series, the monoids `Λ[ρ/r]` and harnesses that check
//! their wedge decomposition and series transfer formula grade by grade.
//!
//! ```
//! use frobcx::complexes::Field;
//! use frobcx::extension::ExtMonoid;
//! use frobcx::frobenius::verify_extension;
//! use frobcx::monoid::{AffineMonoid, Element};
//! use frobcx::series::{closed_form, direct_series, expand_closed_form, Family};
//!
//! fn main() -> frobcx::Result<()> {
//!     let m = AffineMonoid::numerical(&[2, 3])?;
//!     let p = direct_series(&m, &Element::scalar(8), Field::Gf2)?;
//!     assert_eq!(p.to_string(), "1 + t z^2 + t z^3 + t^2 z^5 + t^2 z^6 + t^3 z^8");
//!
//!     let expr = closed_form(&Family::TwoGen { a: 2, b: 3 })?;
//!     assert_eq!(expand_closed_form(&expr, &Element::scalar(8))?, p);
//!
//!     let ext = ExtMonoid::adjoin(AffineMonoid::numerical(&[2])?, Element::scalar(6), 3)?;
//!     assert!(verify_extension(&ext, &Element::scalar(20), Field::Gf2)?.pass);
//!     Ok(())
//! }
//! ```

pub mod cli;
pub mod complexes;
pub mod error;
pub mod extension;
pub mod frobenius;
pub mod interval;
pub mod monoid;
pub mod series;

pub use error::{Error, Result};
