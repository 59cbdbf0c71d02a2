//! Exact coefficient arithmetic: rationals, sparse multivariate polynomials,
//! dense univariate polynomials, fraction-free linear algebra and truncated
//! power series.
//!
//! Everything here is generic over the coefficient type through [`Ring`] and
//! [`Scalar`]; the crate root fixes the concrete aliases used by the rest of
//! the library (`Rational`, `Poly`, ...).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Zero};

mod matrix;
mod mpoly;
mod rational;
mod series;
mod symbol;
mod upoly;

pub use matrix::{bareiss_determinant, null_space, polynomial_determinant, rank, rref, solve, ExactMatrix};
pub use mpoly::{mpoly_derivative, Monomial, MultiPoly};
pub use rational::{binomial, falling_factorial, parse_rational};
pub use series::{log_series, TruncatedSeries};
pub use symbol::{Symbol, NSYM};
pub use upoly::{rational_roots, squarefree_part, RootReport, UniPoly};

/// Commutative ring with identity, as needed by polynomial and matrix code.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Send
        + Sync
{
}

/// Exact field of coefficients. Floating-point types satisfy the bounds but
/// are never used by this crate.
pub trait Scalar: Ring + Num + FromPrimitive + PartialOrd + fmt::Display {}

impl<T> Scalar for T where T: Ring + Num + FromPrimitive + PartialOrd + fmt::Display {}

/// Division in an integral domain that is known (or checked) to be exact.
pub trait ExactDiv: Ring {
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    /// Rough size used to prefer cheap pivots.
    fn pivot_weight(&self) -> usize {
        0
    }
}

macro_rules! field_exact_div {
    ($($t:ty),*) => {$(
        impl ExactDiv for $t {
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if rhs.is_zero() {
                    None
                } else {
                    Some(self.clone() / rhs.clone())
                }
            }
        }
    )*};
}

field_exact_div!(BigRational, Ratio<i64>, Ratio<i128>);

impl ExactDiv for num_bigint::BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        r.is_zero().then_some(q)
    }
}

impl<F: Scalar> ExactDiv for MultiPoly<F> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, rhs)
    }

    fn pivot_weight(&self) -> usize {
        self.num_terms()
    }
}
