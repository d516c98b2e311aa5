//! Exact decision procedures for complete intersections of affine
//! semigroups, toric ideals and rational polyhedral cones.
//!
//! A [`GeneratorSet`] `A ⊂ Z^n` is read three ways: as the semigroup `N A`,
//! as the cone `pos_Q(A)`, and through the toric ideal `I_A`. The crate
//! decides
//!
//! * whether `N A` is a complete intersection, by recursive gluing
//!   ([`gluing::is_complete_intersection`]),
//! * whether `pos_Q(A)` is a complete intersection cone, by recursive
//!   s-gluing ([`gluing::is_ci_cone`]),
//!
//! and exposes the cone machinery behind them: direct sums with ray
//! accounting, general bipyramidal cones, the `2n - 2` extreme-ray bound and
//! the rescaling witness that turns a direct sum of CI cones into a CI
//! semigroup. An independent Gröbner-basis oracle ([`toric`]) recomputes the
//! verdict from the ideal itself.

pub mod cli;
pub mod cone;
pub mod directsum;
pub mod error;
pub mod gluing;
pub mod io;
pub mod json;
pub mod linalg;
pub mod report;
pub mod semigroup;
pub mod toric;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntVector, LatticeBasis, RationalVector};
pub use semigroup::GeneratorSet;
