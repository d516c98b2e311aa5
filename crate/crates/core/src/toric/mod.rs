//! The toric ideal `I_A = ker(x_i ↦ t^{a_i})` computed by a binomial
//! Buchberger engine, and the algebraic complete-intersection test
//! `μ(I_A) = m − rank(A)`.
//!
//! This is an independent check on [`crate::gluing`] for small instances;
//! every entry point enforces a [`Budget`].

mod binomial;
mod buchberger;
mod oracle;

pub use binomial::{lattice_to_binomials, Binomial, TermOrder};
pub use buchberger::{buchberger, in_ideal, normal_form, saturate, Budget};
pub use oracle::{
    is_ci_oracle, is_ci_oracle_with, minimal_generator_count, minimal_generators, OracleConfig, OracleReport,
};
