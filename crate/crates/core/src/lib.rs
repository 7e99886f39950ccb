//! Exact computation of double Hurwitz numbers with completed cycles.
//!
//! Three independent engines (characters, the fermionic Fock space, and
//! commutation patterns of E-operators) compute the same numbers; the crate
//! also provides cut-and-join operators, chamber polynomials with wall
//! crossing, and extraction of intersection-type numbers from one-part
//! polynomials.

pub mod arith;
pub mod error;

pub use arith::{LinearForm, Poly, Rational, Ring, SeriesSpace, TruncatedSeries};
pub use error::{Error, Result};
pub mod completed;
pub mod partitions;

pub use partitions::Partition;
pub mod fock;
pub mod symmetric;

pub use symmetric::WeightedPolynomial;
pub mod hurwitz;
pub mod wedge;
pub mod cutjoin;
pub mod chambers;
pub mod intersection;
