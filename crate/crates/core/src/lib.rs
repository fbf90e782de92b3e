//! Canonical number systems with bases `-m + zeta_k` in `Z[zeta_k]`, and an
//! exact decision procedure for multiplicative independence of two such bases.
//!
//! - [`bigpoly`]: dense integer polynomials and quotient rings `Z[X] / (P)`.
//! - [`cyclotomic`]: `Phi_k`, Euler's totient, and the bases `Phi_k(m + X)`.
//! - [`cns`]: the coefficient criterion, digit expansions, exhaustive checks.
//! - [`multind`]: norm decomposition, torsion tests, and the Diophantine
//!   searches behind the independence results.

pub mod bigpoly;
pub mod cns;
pub mod cyclotomic;
pub mod error;
pub mod multind;

pub use bigpoly::{IntPoly, QuotientRing, Residue};
pub use cyclotomic::CnsBasis;
pub use error::{Error, Result};
