//! Irreducibility certificates for mod-`p` Galois representations of elliptic
//! curves over quadratic fields.
//!
//! A curve with multiplicative reduction at the prime above an inert rational
//! prime `q > 5` has irreducible mod-`p` representation for every prime
//! `p > 71`. This crate searches for such a witness prime, cross-checks the
//! result with an independent Frobenius-trace test, and implements the
//! hypothesis checks of an asymptotic Fermat statement over the imaginary
//! quadratic fields of class number one.

pub mod arith;
pub mod certifier;
pub mod elliptic;
pub mod error;
pub mod fermat;
pub mod frobenius;
pub mod number_field;
pub mod reduction;
pub mod sunit;

pub use error::{Error, Result};
pub use number_field::{FieldElement, PrimeIdeal, QuadraticField, Splitting, Valuation};
