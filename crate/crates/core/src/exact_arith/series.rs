use super::{Scalar, Symbol};
use crate::error::{Error, Result};

/// Power series in one variable truncated at a fixed order `N`: coefficients
/// of x^0 .. x^{N-1} are kept, everything from x^N on is dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<F> {
    var: Symbol,
    coeffs: Vec<F>,
}

impl<F: Scalar> TruncatedSeries<F> {
    pub fn new(var: Symbol, order: usize, mut coeffs: Vec<F>) -> Self {
        coeffs.resize(order, F::zero());
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Symbol, order: usize) -> Self {
        Self::new(var, order, vec![])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new(
            self.var,
            n,
            (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect(),
        )
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::new(
            self.var,
            self.order(),
            self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.var, n, out)
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let mut out = Self::zero(self.var, n);
        let mut power = Self::new(self.var, n, vec![F::one()]);
        for k in 0..n {
            out = out.add(&power.scale(&self.coeff(k)));
            power = power.mul(inner);
        }
        Ok(out)
    }

    /// exp(a) for `a` with zero constant term, summed term by term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut out = Self::new(self.var, n, vec![F::one()]);
        let mut term = out.clone();
        for k in 1..n {
            let inv = F::one() / F::from_usize(k).expect("small integer");
            term = term.mul(self).scale(&inv);
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// log(1 + a) = sum over n > 0 of (-1)^{n-1} a^n / n, truncated at the
/// order of `a`.
pub fn log_series<F: Scalar>(a: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    let n = a.order();
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if !a.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = TruncatedSeries::zero(a.var(), n);
    let mut power = a.clone();
    // a^k vanishes below x^k, so k < n suffices.
    for k in 1..n {
        let c = F::from_usize(k).expect("small integer");
        let c = if k % 2 == 1 { F::one() / c } else { -(F::one() / c) };
        out = out.add(&power.scale(&c));
        power = power.mul(a);
    }
    Ok(out)
}
