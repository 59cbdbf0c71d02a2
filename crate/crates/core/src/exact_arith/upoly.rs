use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Monomial, Ring, Scalar, Symbol};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<R> {
    var: Symbol,
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(var: Symbol, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Symbol) -> Self {
        UniPoly { var, coeffs: vec![] }
    }

    pub fn constant(var: Symbol, c: R) -> Self {
        Self::new(var, vec![c])
    }

    /// The identity polynomial `var`.
    pub fn x(var: Symbol) -> Self {
        Self::new(var, vec![R::zero(), R::one()])
    }

    /// `var - a`.
    pub fn linear_root(var: Symbol, a: R) -> Self {
        Self::new(var, vec![-a, R::one()])
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| times(c, k))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Self::new(self.var, coeffs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect();
        Self::new(self.var, coeffs)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.var);
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.var, coeffs)
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::new(
            self.var,
            self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.var, R::one()), |acc, _| acc.mul(self))
    }

    /// `self(inner)`; the result takes the variable of `inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(UniPoly::zero(inner.var), |acc, c| {
            acc.mul(inner).add(&UniPoly::constant(inner.var, c.clone()))
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn with_var(mut self, var: Symbol) -> Self {
        self.var = var;
        self
    }
}

fn times<R: Ring>(c: &R, k: usize) -> R {
    let mut acc = R::zero();
    for _ in 0..k {
        acc = acc + c.clone();
    }
    acc
}

impl<F: Scalar> UniPoly<F> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = F::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.leading()?.clone();
        let dd = d.degree()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().clone() / dl.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Some((Self::new(self.var, q), Self::new(self.var, r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<F: Scalar> UniPoly<MultiPoly<F>> {
    /// Coefficients all constant: convert to a polynomial over the field.
    pub fn to_numeric(&self) -> Option<UniPoly<F>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.constant_value())
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(self.var, coeffs))
    }

    /// Flattens into a multivariate polynomial in which `var` is a symbol.
    pub fn to_mpoly(&self) -> MultiPoly<F> {
        let mut out = MultiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out += c.mul_monomial(&Monomial::pow_of(self.var, k as u16), &F::one());
        }
        out
    }

    pub fn from_mpoly(p: &MultiPoly<F>, var: Symbol) -> Self {
        UniPoly::new(var, p.coefficients_in(var))
    }
}

impl<F: Scalar> UniPoly<F> {
    pub fn to_symbolic(&self) -> UniPoly<MultiPoly<F>> {
        self.map(|c| MultiPoly::constant(c.clone()))
    }
}

impl<F: Scalar> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_symbolic().to_mpoly().fmt(f)
    }
}

/// Rational roots of a polynomial with multiplicities, plus the monic factor
/// left over once every rational root has been divided out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<(BigRational, usize)>,
    pub residual: UniPoly<BigRational>,
}

impl RootReport {
    pub fn multiplicity(&self, r: &BigRational) -> usize {
        self.roots
            .iter()
            .find(|(x, _)| x == r)
            .map_or(0, |&(_, m)| m)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = vec![];
    let mut large = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots with exact multiplicities, sorted ascending.
pub fn rational_roots(p: &UniPoly<BigRational>) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = p.var();
    let mut rest = p.monic();
    let mut roots = vec![];

    let zeros = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((BigRational::zero(), zeros));
        rest = UniPoly::new(var, rest.coeffs()[zeros..].to_vec());
    }

    // Clear denominators to get an integer polynomial with the same roots.
    let lcm = rest
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rest
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints.len() > 1 {
        let lead = ints.last().unwrap();
        let trail = &ints[0];
        let mut candidates = vec![];
        for num in divisors(trail) {
            for den in divisors(lead) {
                let r = BigRational::new(num.clone(), den);
                candidates.push(-r.clone());
                candidates.push(r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let lin = UniPoly::linear_root(var, r.clone());
            let mut mult = 0;
            loop {
                if rest.degree() == Some(0) {
                    break;
                }
                let (q, rem) = rest.div_rem(&lin).expect("nonzero divisor");
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootReport {
        roots,
        residual: rest.monic(),
    })
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &UniPoly<BigRational>) -> Result<UniPoly<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let (q, _) = p.div_rem(&g).expect("gcd is nonzero");
    Ok(q.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn up(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(Symbol::X, cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn roots_of_fusion_polynomials() {
        let r = rational_roots(&up(&[0, -2, 1])).unwrap();
        assert_eq!(r.roots, vec![(q(0, 1), 1), (q(2, 1), 1)]);
        assert_eq!(r.residual, up(&[1]));

        let r = rational_roots(&up(&[0, 0, 1])).unwrap();
        assert_eq!(r.roots, vec![(q(0, 1), 2)]);

        let r = rational_roots(&up(&[1, 0, 1])).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.residual, up(&[1, 0, 1]));
    }

    #[test]
    fn roots_with_fractions() {
        // (x - 1/4)^2 (x + 3/2)
        let lin = |a: Rational| UniPoly::linear_root(Symbol::X, a);
        let p = lin(q(1, 4)).pow(2).mul(&lin(q(-3, 2))).scale(&q(6, 1));
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.roots, vec![(q(-3, 2), 1), (q(1, 4), 2)]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            rational_roots(&UniPoly::zero(Symbol::X)),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            squarefree_part(&UniPoly::zero(Symbol::X)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&up(&[1, -2, 1])).unwrap(), up(&[-1, 1]));
        assert_eq!(squarefree_part(&up(&[0, -2, 1])).unwrap(), up(&[0, -2, 1]));
        // x^4 + 2x^3 + x^2 = x^2 (x+1)^2, worked by hand
        assert_eq!(squarefree_part(&up(&[0, 0, 1, 2, 1])).unwrap(), up(&[0, 1, 1]));
    }

    #[test]
    fn display_is_graded() {
        assert_eq!(up(&[0, -2, 1]).to_string(), "x^2 - 2x");
    }

    #[test]
    fn compose_shifts() {
        // p(x) = x^2, p(x - 1) = x^2 - 2x + 1
        let p = up(&[0, 0, 1]);
        assert_eq!(p.compose(&up(&[-1, 1])), up(&[1, -2, 1]));
    }

    proptest! {
        #[test]
        fn reported_multiplicities_are_exact(
            rs in proptest::collection::vec((-6i64..=6, 1i64..=4, 1usize..=3), 1..4),
            extra in proptest::collection::vec(-3i64..=3, 0..3),
        ) {
            let mut p = up(&[1]);
            for &(n, d, m) in &rs {
                p = p.mul(&UniPoly::linear_root(Symbol::X, q(n, d)).pow(m as u32));
            }
            let mut tail = extra.clone();
            tail.push(1);
            p = p.mul(&up(&tail));
            prop_assume!(!p.is_zero());
            let report = rational_roots(&p).unwrap();
            for (r, m) in &report.roots {
                let lin = UniPoly::linear_root(Symbol::X, r.clone());
                let (_, rem) = p.div_rem(&lin.pow(*m as u32)).unwrap();
                prop_assert!(rem.is_zero());
                let (_, rem) = p.div_rem(&lin.pow(*m as u32 + 1)).unwrap();
                prop_assert!(!rem.is_zero());
            }
            for &(n, d, _) in &rs {
                prop_assert!(report.multiplicity(&q(n, d)) >= 1);
            }
        }
    }
}
