//! Exact arithmetic for the affine Schur algebra `S(n, r)` at `q = 1` over
//! the rationals, with a verifier for the affine cellular structure of
//! `S(2, 2)`.

pub mod cell;
pub mod element;
pub mod error;
pub mod hecke;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod mult;
pub mod weyl;

pub use element::AlgebraElement;
pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use laurent::{LaurentPoly1, LaurentPoly2, Mono2};
pub use matrix::{Composition, Entry, PeriodicMatrix};
pub use mult::{identity_element, multiply, multiply_oracle};
pub use weyl::{IndexTuple, WeylElement};
