use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Scalar, Symbol, NSYM};
use crate::error::{Error, Result};

/// Exponent vector over the global symbol registry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub(crate) [u16; NSYM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NSYM])
    }

    pub fn var(s: Symbol) -> Self {
        Self::pow_of(s, 1)
    }

    pub fn pow_of(s: Symbol, e: u16) -> Self {
        let mut m = [0; NSYM];
        m[s.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.0[s.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(m))
    }

    pub fn exponents(&self) -> &[u16; NSYM] {
        &self.0
    }
}

/// Graded lexicographic: total degree first, then lexicographic in registry order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the symbol registry. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n).expect("integer coefficient"))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(F::one(), Monomial::var(s))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = std::mem::replace(v, F::zero()) + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .get(&Monomial::one())
                .cloned()
                .unwrap_or_else(F::zero),
        )
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, s: Symbol) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(s)).max()
    }

    /// Symbols with a nonzero exponent somewhere, in registry order.
    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .iter()
            .copied()
            .filter(|s| self.terms.keys().any(|m| m.exp(*s) > 0))
            .collect()
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, s: Symbol) -> Self {
        let i = s.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            out.add_term(m2, c.clone() * F::from_u16(e).expect("exponent"));
        }
        out
    }

    /// Substitutes a polynomial for one symbol.
    pub fn substitute(&self, s: Symbol, value: &MultiPoly<F>) -> Self {
        let i = s.index();
        let mut powers: Vec<MultiPoly<F>> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[i] = 0;
            out += powers[e].mul_monomial(&rest, c);
        }
        out
    }

    pub fn eval(&self, s: Symbol, value: &F) -> Self {
        self.substitute(s, &Self::constant(value.clone()))
    }

    /// Evaluates at the given point; `None` if some symbol stays free.
    pub fn eval_all(&self, point: &[(Symbol, F)]) -> Option<F> {
        let mut p = self.clone();
        for (s, v) in point {
            p = p.eval(*s, v);
        }
        p.constant_value()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((lm, lc)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            let m = lm.div(&dm)?;
            let c = lc.clone() / dc.clone();
            if c.clone() * dc.clone() != lc {
                return None;
            }
            for (tm, tc) in &d.terms {
                r.add_term(tm.mul(&m), -(tc.clone() * c.clone()));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Coefficients as a polynomial in `s` whose coefficients live in the
    /// remaining symbols; index k holds the coefficient of s^k.
    pub fn coefficients_in(&self, s: Symbol) -> Vec<MultiPoly<F>> {
        let i = s.index();
        let deg = self.degree_in(s).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[i] as usize;
            rest.0[i] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }
}

/// Formal partial derivative of `p` with respect to the symbol named `var`.
pub fn mpoly_derivative<F: Scalar>(p: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>> {
    let s: Symbol = var.parse()?;
    Ok(p.derivative(s))
}

impl<F: Scalar> Zero for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> One for MultiPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Scalar> From<Symbol> for MultiPoly<F> {
    fn from(s: Symbol) -> Self {
        Self::var(s)
    }
}

impl<'a, F: Scalar> AddAssign<&'a MultiPoly<F>> for MultiPoly<F> {
    fn add_assign(&mut self, rhs: &'a MultiPoly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<F: Scalar> AddAssign for MultiPoly<F> {
    fn add_assign(&mut self, rhs: MultiPoly<F>) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            *self += &rhs;
        }
    }
}

impl<'a, F: Scalar> SubAssign<&'a MultiPoly<F>> for MultiPoly<F> {
    fn sub_assign(&mut self, rhs: &'a MultiPoly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<F: Scalar> SubAssign for MultiPoly<F> {
    fn sub_assign(&mut self, rhs: MultiPoly<F>) {
        *self -= &rhs;
    }
}

impl<'a, F: Scalar> Add<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<F: Scalar> Add for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(mut self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        self += rhs;
        self
    }
}

impl<'a, F: Scalar> Sub<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<F: Scalar> Sub for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(mut self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        self -= &rhs;
        self
    }
}

impl<'a, F: Scalar> Mul<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                prods.push((m1.mul(m2), c1.clone() * c2.clone()));
            }
        }
        prods.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, F)> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = std::mem::replace(lc, F::zero()) + c,
                _ => merged.push((m, c)),
            }
        }
        MultiPoly {
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<F: Scalar> Mul for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        &self * &rhs
    }
}

impl<'a, F: Scalar> Mul<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        &self * rhs
    }
}

impl<F: Scalar> Default for MultiPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a, F: Scalar> Neg for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        -self.clone()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for s in Symbol::ALL {
        match m.exp(s) {
            0 => {}
            1 => write!(f, "{s}")?,
            e => write!(f, "{s}^{e}")?,
        }
    }
    Ok(())
}

/// Terms in descending graded-lex order, e.g. `16h^2 + 2ch - 10h + c`.
impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < F::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> std::str::FromStr for MultiPoly<F> {
    type Err = Error;

    /// Parses the text rendering produced by `Display`; `*` between factors
    /// and spaces are optional.
    fn from_str(s: &str) -> Result<Self> {
        Parser { src: s, pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in `{}`", self.pos, self.src))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let r = self.rest();
        let n = r.bytes().take_while(|b| b.is_ascii_digit()).count();
        if n == 0 {
            return None;
        }
        self.pos += n;
        Some(&r[..n])
    }

    fn symbol(&mut self) -> Option<Symbol> {
        self.skip_ws();
        let r = self.rest();
        let (name, sym) = Symbol::spellings()
            .iter()
            .find(|(name, _)| r.starts_with(name))?;
        self.pos += name.len();
        Some(*sym)
    }

    fn poly<F: Scalar>(mut self) -> Result<MultiPoly<F>> {
        let mut out = MultiPoly::zero();
        self.skip_ws();
        if self.rest().is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.rest().is_empty() {
                break;
            }
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') {
                false
            } else if first {
                false
            } else {
                return Err(self.err("expected + or -"));
            };
            first = false;
            let (m, c) = self.term::<F>()?;
            out.add_term(m, if neg { -c } else { c });
        }
        Ok(out)
    }

    fn term<F: Scalar>(&mut self) -> Result<(Monomial, F)> {
        self.skip_ws();
        let mut coeff = F::one();
        let mut saw_any = false;
        if let Some(num) = self.digits() {
            let mut text = format!("{num}/1");
            if self.rest().starts_with('/') {
                self.pos += 1;
                let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                text = format!("{num}/{den}");
            }
            if self.rest().starts_with('.') {
                return Err(Error::BadRational(self.src.to_string()));
            }
            coeff = F::from_str_radix(&text, 10).map_err(|_| self.err("bad coefficient"))?;
            saw_any = true;
        }
        let mut m = Monomial::one();
        loop {
            let save = self.pos;
            self.eat('*');
            match self.symbol() {
                Some(s) => {
                    let mut e = 1u16;
                    if self.eat('^') {
                        self.skip_ws();
                        e = self
                            .digits()
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(|| self.err("bad exponent"))?;
                    }
                    m = m.mul(&Monomial::pow_of(s, e));
                    saw_any = true;
                }
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        if !saw_any {
            return Err(self.err("expected a term"));
        }
        Ok((m, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_of_gram_entry() {
        let h = Poly::var(Symbol::H);
        let one = Poly::one();
        let two = Poly::from_i64(2);
        let f = &(&(&Poly::from_i64(24) * &h) * &(&h + &one)) * &(&one + &(&two * &h));
        assert_eq!(f.derivative(Symbol::H), p("144h^2 + 144h + 24"));
        assert_eq!(p("16h + 2c").derivative(Symbol::H), p("16"));
        assert!(p("7/3").derivative(Symbol::H).is_zero());
    }

    #[test]
    fn derivative_rejects_unknown_symbol() {
        assert_eq!(
            mpoly_derivative(&p("h"), "z"),
            Err(Error::UnknownSymbol("z".into()))
        );
        assert_eq!(mpoly_derivative(&p("h^2"), "h").unwrap(), p("2h"));
    }

    #[test]
    fn display_uses_descending_grlex() {
        assert_eq!(p("c + 2hc + 16h^2 - 10h").to_string(), "2ch + 16h^2 + c - 10h");
        assert_eq!(p("-x + x^2").to_string(), "x^2 - x");
        assert_eq!(p("2/3b").to_string(), "2/3b");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("h1 h").to_string(), "hh1");
        assert_eq!(p("hh1"), p("h*h1"));
    }

    #[test]
    fn exact_division() {
        let a = p("3h^2 + hc - 7h + 2 + c");
        let b = p("16h^2 + 2hc - 10h + c");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(p("h^2 + 1").div_exact(&p("h + 1")), None);
        assert_eq!(a.div_exact(&Poly::zero()), None);
    }

    #[test]
    fn generic_over_small_rationals() {
        let q: MultiPoly<Ratio<i64>> = "1/2h + 1".parse().unwrap();
        let sq = &q * &q;
        assert_eq!(sq.to_string(), "1/4h^2 + h + 1");
        assert_eq!(sq.div_exact(&q), Some(q));
    }

    #[test]
    fn substitution_and_coefficients() {
        let f = p("h^2 + ch + 1");
        assert_eq!(f.substitute(Symbol::H, &p("x - 1")), p("x^2 - 2x + 1 + cx - c + 1"));
        let cs = f.coefficients_in(Symbol::H);
        assert_eq!(cs, vec![p("1"), p("c"), p("1")]);
        assert_eq!(
            f.eval_all(&[(Symbol::H, Rational::from_integer(2.into())), (Symbol::C, Rational::from_integer(3.into()))]),
            Some(Rational::from_integer(11.into()))
        );
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-5i64..=5, 0u16..3, 0u16..3), 0..5).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|(c, eh, ec)| {
                (
                    Monomial::pow_of(Symbol::H, eh).mul(&Monomial::pow_of(Symbol::C, ec)),
                    Rational::from_integer(c.into()),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn derivative_is_linear_and_leibniz(a in arb_poly(), b in arb_poly()) {
            let d = |x: &Poly| x.derivative(Symbol::H);
            prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
            prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let back: Poly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
