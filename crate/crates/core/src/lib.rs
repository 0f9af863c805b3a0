//! Exact shape polynomials and enumeration of fermion shapes.
//!
//! Antisymmetric polynomials in `N` particles with `d` coordinates each form a
//! free module over the ring of polynomials that are symmetric in every
//! coordinate separately. The free generators ("shapes") number `N!^(d-1)`;
//! their distribution by total degree ("grade") is the shape polynomial.
//!
//! * [`qseries`] computes shape polynomials and grade-resolved state counts.
//! * [`multipoly`] is sparse exact multivariate arithmetic over the formal
//!   variables, plus Vandermonde, Slater and elementary symmetric builders.
//! * [`shiftops`] implements shift letters and symmetrized words.
//! * [`exactla`] is fraction-free incremental rank over the integers.
//! * [`coinvariant`] reduces polynomials modulo the symmetric generators.
//! * [`enumerate`] descends from the source shape and builds the branching
//!   tree, with a Slater-basis oracle as fallback.

pub mod coinvariant;
pub mod enumerate;
pub mod error;
pub mod exactla;
pub mod multipoly;
pub mod qseries;
pub mod shiftops;

pub use error::{Error, Result};
