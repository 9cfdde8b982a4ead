//! Exact computations for Chow rings of non-commutative Hilbert schemes:
//! m-ary forest combinatorics, symmetric polynomials, the shuffle product
//! of the m-loop quiver CoHa, and Gröbner presentations of the quotient.

pub mod chow;
pub mod coha;
pub mod error;
pub mod forest;
pub mod groebner;
pub mod poly;
pub mod symmetric;

pub use error::{Error, Result};
pub use poly::{parse_poly, rat, Basis, Rational, SparsePoly};
