//! Exact commutative algebra for intersection multiplicities.
//!
//! Polynomials over the rationals or a prime field, Gröbner bases for
//! ideals and submodules of free modules, free resolutions and Tor, Koszul
//! homology, Hilbert–Samuel multiplicities, tangent cones, the diagonal
//! reduction of intersection multiplicities over a base of dimension at most
//! two, and point blowups of affine space.

pub mod blowup;
pub mod corpus;
pub mod diagonal;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod monomial;
pub mod multiplicity;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Coeff, Field, Fp, Rational};
pub use groebner::{HilbertSeries, Ideal};
pub use homology::{FreeComplex, Matrix, PresentedModule};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{Budget, Ring, RingRef};
