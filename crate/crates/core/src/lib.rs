//! Computer algebra for Harish-Chandra pairs `(G, g)`: Lie superalgebras, `U(g_C)` in PBW normal
//! form, the crossed-product *-algebra `U(g_C) ⊗ D(G_ε)`, its multipliers, finite-dimensional
//! unitary representations and certified bounds for the C*-seminorm they induce.
//!
//! Two realizations of `G` are supported: finite groups given by a Cayley table, and the real
//! line acting trivially (Heisenberg–Clifford pairs). Test functions on the line are finite sums
//! of polynomials times Gaussians, a class closed under every operation used here.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod crossed;
pub mod dsl;
pub mod enveloping;
pub mod error;
pub mod function;
pub mod group;
pub mod json;
pub mod linalg;
pub mod report;
pub mod repr;
pub mod scalar;

pub use error::{Error, Result};
