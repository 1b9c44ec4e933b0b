//! Toric Jacobian rings of curves on complete smooth toric surfaces.
//!
//! The crate computes, in exact rational arithmetic, the graded pieces of the
//! Jacobian ideals `J(f)`, `J0(f)` and `J1(f) = J0(f) : (x_1 ... x_n)` of a
//! homogeneous polynomial `f` in the Cox ring of a smooth toric surface, and
//! evaluates a dimension criterion guaranteeing that the curve `f = 0` admits a
//! first-order deformation of maximal rank `g` inside its linear system.
//!
//! Module map:
//!
//! * [`fan`]: complete smooth fans in the plane,
//! * [`divisor`]: Picard group, intersections, ampleness, section polytopes,
//! * [`poly`]: the Picard-graded Cox ring,
//! * [`linalg`], [`groebner`]: exact linear algebra and a bivariate Buchberger,
//! * [`jacobian`]: graded pieces of the Jacobian ideals, nondegeneracy, pairings,
//! * [`criterion`]: the rank-`g` certification pipeline,
//! * [`io`], [`cli`]: file formats and the command line front end.

pub mod cli;
pub mod criterion;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod groebner;
pub mod io;
pub mod jacobian;
pub mod linalg;
pub mod poly;

pub use divisor::{PicClass, TorusDivisor};
pub use error::{Error, Result};
pub use fan::{Fan, Ray};
pub use jacobian::JacobianSystem;
pub use poly::{CoxPolynomial, Exponents};
