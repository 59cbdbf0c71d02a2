//! Exact computer algebra for Virasoro representation theory with Jordan
//! (logarithmic) top levels.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact_arith`]: rationals, polynomials, fraction-free linear algebra;
//! * [`virasoro`]: PBW normal ordering in U(Vir) and the transpose;
//! * [`vir_modules`]: generalized Verma modules M_n(c,h), Shapovalov forms,
//!   singular vectors, density modules;
//! * [`fusion`]: Euler operators from singular vectors, indicial (fusion)
//!   polynomials and logarithmic resonance;
//! * [`wlog`]: the logarithmic Witt algebra and its central extension;
//! * [`json`] and [`report`]: serialization and the fixture report used by
//!   the `virlog` binary.
//!
//! The arithmetic layer is generic over the coefficient field; the aliases
//! below pin the exact rational instantiation used everywhere else.

pub mod error;
pub mod exact_arith;
pub mod virasoro;
pub mod vir_modules;
pub mod fusion;
pub mod wlog;
pub mod json;
pub mod report;

pub use error::{Error, Result};
pub use exact_arith::Symbol;

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;
/// Sparse polynomial in the registry symbols with rational coefficients.
pub type Poly = exact_arith::MultiPoly<Rational>;
/// Dense univariate polynomial with rational coefficients.
pub type QPoly = exact_arith::UniPoly<Rational>;
/// Dense univariate polynomial whose coefficients are polynomials.
pub type SymPoly = exact_arith::UniPoly<Poly>;
/// Matrix over Q.
pub type QMatrix = exact_arith::ExactMatrix<Rational>;
/// Matrix over Q[c, h, ...].
pub type PolyMatrix = exact_arith::ExactMatrix<Poly>;
