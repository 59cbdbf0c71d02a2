use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Cocycle, Gen};
use crate::error::{Error, Result};
use crate::Rational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn factorial(n: i64) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k))
}

fn pow(x: &Rational, e: i64) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// f(t) d/dt with f a finite sum of a t^k e^{-pt}, keyed by (k, p).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentField {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LaurentField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// t^k e^{-pt}.
    pub fn monomial(k: i64, p: i64) -> Self {
        let mut f = Self::zero();
        f.add_term(k, p, Rational::one());
        f
    }

    /// Vector field of t^{(i)}(m): t^i e^{-mt}.
    pub fn of(g: Gen) -> Self {
        Self::monomial(g.log, g.mode)
    }

    pub fn add_term(&mut self, k: i64, p: i64, a: Rational) {
        if a.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, p)).or_insert_with(Rational::zero);
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&(k, p));
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(k, p), a) in &self.terms {
            out.add_term(k - 1, p, a * rat(k));
            out.add_term(k, p, -(a * rat(p)));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&(k1, p1), a) in &self.terms {
            for (&(k2, p2), b) in &o.terms {
                out.add_term(k1 + k2, p1 + p2, a * b);
            }
        }
        out
    }

    /// Coefficient of t^{-1}: t^k e^{-pt} contributes (-p)^{-1-k}/(-1-k)!.
    pub fn residue(&self) -> Rational {
        let mut acc = Rational::zero();
        for (&(k, p), a) in &self.terms {
            if k <= -1 {
                let n = -1 - k;
                acc += a * pow(&rat(-p), n) / factorial(n);
            }
        }
        acc
    }

    /// Bracket of vector fields: [f d/dt, g d/dt] = (f g' - f' g) d/dt.
    pub fn bracket(&self, o: &Self) -> Self {
        let mut out = self.mul(&o.derivative());
        for (&(k, p), a) in &self.derivative().mul(o).terms {
            out.add_term(k, p, -a.clone());
        }
        out
    }
}

/// (1/12) Res_t f''' g for the vector fields of `a` and `b`.
pub fn cocycle_residue(a: Gen, b: Gen) -> Rational {
    let f3 = LaurentField::of(a).derivative().derivative().derivative();
    f3.mul(&LaurentField::of(b)).residue() / rat(12)
}

/// The printed finite sum, in the parametrization a = t^{(1-i)}(-m),
/// b = t^{(1-j)}(-n):
///   sum_{r=0}^{i+j} m^r n^{i+j-r} ((i-r)^3 - (i-r)) / (12 (i+j-r)! r!).
/// Only defined for i, j >= 0.
pub fn cocycle_closed_form(a: Gen, b: Gen) -> Result<Rational> {
    let (i, m) = (1 - a.log, rat(-a.mode));
    let (j, n) = (1 - b.log, rat(-b.mode));
    if i < 0 || j < 0 {
        return Err(Error::ClosedFormDomain);
    }
    let mut acc = Rational::zero();
    for r in 0..=i + j {
        let d = i - r;
        let kernel = rat(d * d * d - d);
        if kernel.is_zero() {
            continue;
        }
        acc += pow(&m, r) * pow(&n, i + j - r) * kernel
            / (rat(12) * factorial(i + j - r) * factorial(r));
    }
    Ok(acc)
}

pub fn cocycle(a: Gen, b: Gen, mode: Cocycle) -> Result<Rational> {
    match mode {
        Cocycle::None => Ok(Rational::zero()),
        Cocycle::Closed => cocycle_closed_form(a, b),
        Cocycle::Residue => Ok(cocycle_residue(a, b)),
    }
}
