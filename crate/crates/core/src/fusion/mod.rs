//! Euler differential operators obtained from singular vectors, their
//! indicial (fusion) polynomials, and formal solutions with logarithms.
//!
//! An operator is a finite sum of terms a x^{-k} (d/dx)^j; a formal series is
//! a finite sum of terms a x^s log^p(x). Since x^{-k} D^j lowers the exponent
//! by k + j, an operator whose terms all share k + j = N acts on x^s by a
//! scalar polynomial q(s) times x^{s-N}.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{binomial, falling_factorial};
use crate::{Poly, Rational, SymPoly, Symbol};

mod cases;
mod solve;

pub use cases::{
    descent_operator, descent_operator_words, determine_b, fixture_polynomial, log_coefficient_mu,
    ope_level2_coefficient, primary_commutator, FixtureCase,
};
pub use solve::{indicial_polynomial, solve_euler, EulerSolution, IndicialData};

/// Sum of a x^{-k} (d/dx)^j, keyed by (k, j).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EulerOperator {
    terms: BTreeMap<(i64, u32), Poly>,
}

impl EulerOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(0, 0, Poly::one())
    }

    pub fn term(k: i64, j: u32, a: Poly) -> Self {
        let mut op = Self::zero();
        op.add_term(k, j, a);
        op
    }

    /// x d/dx.
    pub fn euler() -> Self {
        Self::term(-1, 1, Poly::one())
    }

    pub fn add_term(&mut self, k: i64, j: u32, a: Poly) {
        if a.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, j)).or_insert_with(Poly::zero);
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&(k, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Poly)> {
        self.terms.iter().map(|(&(k, j), a)| (k, j, a))
    }

    pub fn coeff(&self, k: i64, j: u32) -> Poly {
        self.terms.get(&(k, j)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(k, j), a) in &o.terms {
            out.add_term(k, j, a.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Poly::one()))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero();
        for (&(k, j), a) in &self.terms {
            out.add_term(k, j, a * c);
        }
        out
    }

    /// `self ∘ o`, using D^j x^{-k'} = sum_l C(j,l) ff(-k',l) x^{-k'-l} D^{j-l}.
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&(k, j), a) in &self.terms {
            for (&(k2, j2), b) in &o.terms {
                let ab = a * b;
                for l in 0..=j {
                    let ff = falling_factorial(&Rational::from_integer((-k2).into()), l);
                    if ff.is_zero() {
                        continue;
                    }
                    let c = binomial(j as u64, l as u64) * ff;
                    out.add_term(k + k2 + l as i64, j - l + j2, ab.scale(&c));
                }
            }
        }
        out
    }

    /// Common value of k + j, or an error if the terms disagree.
    pub fn weight(&self) -> Result<i64> {
        let mut w = None;
        for &(k, j) in self.terms.keys() {
            let n = k + j as i64;
            if *w.get_or_insert(n) != n {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(w.unwrap_or(0))
    }

    /// q(s) with op x^s = q(s) x^{s-N}, as a polynomial in the symbol s.
    pub fn indicial(&self) -> Result<SymPoly> {
        self.weight()?;
        let mut q = SymPoly::zero(Symbol::S);
        for (&(_, j), a) in &self.terms {
            // s(s-1)...(s-j+1)
            let mut ff = SymPoly::constant(Symbol::S, a.clone());
            for i in 0..j {
                ff = ff.mul(&SymPoly::linear_root(Symbol::S, Poly::from_i64(i as i64)));
            }
            q = q.add(&ff);
        }
        Ok(q)
    }

    /// Applies the operator term by term, differentiating x^s log^p directly.
    pub fn apply(&self, f: &LogSeries) -> LogSeries {
        let mut out = LogSeries::zero();
        for (&(k, j), a) in &self.terms {
            let mut g = f.clone();
            for _ in 0..j {
                g = g.derivative();
            }
            out = out.add(&g.shift(&Rational::from_integer((-k).into())).scale(a));
        }
        out
    }
}

impl fmt::Display for EulerOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest derivative first
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        for (i, (&(k, j), a)) in ts.into_iter().enumerate() {
            let (neg, a) = match a.constant_value() {
                Some(c) if c < Rational::zero() => (true, -a.clone()),
                _ => (false, a.clone()),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = vec![];
            if !a.is_one() {
                if a.num_terms() > 1 {
                    parts.push(format!("({a})"));
                } else {
                    parts.push(a.to_string());
                }
            }
            if k != 0 {
                parts.push(format!("x^{}", -k));
            }
            match j {
                0 => {}
                1 => parts.push("D".into()),
                _ => parts.push(format!("D^{j}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Finite sum of a x^s log^p(x), keyed by (s, p).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogSeries {
    terms: BTreeMap<(Rational, u32), Poly>,
}

impl LogSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(s: Rational, p: u32, a: Poly) -> Self {
        let mut f = Self::zero();
        f.add_term(s, p, a);
        f
    }

    pub fn monomial(s: Rational, p: u32) -> Self {
        Self::term(s, p, Poly::one())
    }

    pub fn add_term(&mut self, s: Rational, p: u32, a: Poly) {
        if a.is_zero() {
            return;
        }
        let key = (s, p);
        let slot = self.terms.entry(key.clone()).or_insert_with(Poly::zero);
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, u32, &Poly)> {
        self.terms.iter().map(|((s, p), a)| (s, *p, a))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, s: &Rational, p: u32) -> Poly {
        self.terms
            .get(&(s.clone(), p))
            .cloned()
            .unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_log_power(&self) -> Option<u32> {
        self.terms.keys().map(|(_, p)| *p).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((s, p), a) in &o.terms {
            out.add_term(s.clone(), *p, a.clone());
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero();
        for ((s, p), a) in &self.terms {
            out.add_term(s.clone(), *p, a * c);
        }
        out
    }

    /// Multiplies by x^d.
    pub fn shift(&self, d: &Rational) -> Self {
        let mut out = Self::zero();
        for ((s, p), a) in &self.terms {
            out.add_term(s + d, *p, a.clone());
        }
        out
    }

    /// d/dx, with d/dx log(x) = 1/x.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for ((s, p), a) in &self.terms {
            let s1 = s - Rational::one();
            out.add_term(s1.clone(), *p, a.scale(s));
            if *p > 0 {
                out.add_term(s1, p - 1, a.scale(&Rational::from_integer((*p).into())));
            }
        }
        out
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((s, p), a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !a.is_one() {
                write!(f, "({a}) ")?;
            }
            write!(f, "x^({s})")?;
            match p {
                0 => {}
                1 => f.write_str(" log(x)")?,
                _ => write!(f, " log(x)^{p}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn resonant_op() -> EulerOperator {
        let mut op = EulerOperator::term(0, 2, Poly::one());
        op.add_term(1, 1, Poly::constant(q(3, 2)));
        op.add_term(2, 0, Poly::constant(q(-15, 16)));
        op
    }

    #[test]
    fn indicial_of_resonant_operator() {
        let qs = resonant_op().indicial().unwrap().to_numeric().unwrap();
        assert_eq!(qs.coeffs(), &[q(-15, 16), q(1, 2), q(1, 1)]);
        assert_eq!(resonant_op().weight().unwrap(), 2);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let op = EulerOperator::term(0, 2, Poly::one()).add(&EulerOperator::term(0, 1, Poly::one()));
        assert_eq!(op.weight(), Err(Error::Inhomogeneous));
        assert!(op.indicial().is_err());
    }

    #[test]
    fn compose_d_after_x_inverse() {
        // D ∘ x^{-1} = x^{-1} D - x^{-2}
        let d = EulerOperator::term(0, 1, Poly::one());
        let xi = EulerOperator::term(1, 0, Poly::one());
        let mut want = EulerOperator::term(1, 1, Poly::one());
        want.add_term(2, 0, Poly::from_i64(-1));
        assert_eq!(d.compose(&xi), want);
    }

    #[test]
    fn derivative_of_log() {
        let f = LogSeries::monomial(q(0, 1), 1);
        assert_eq!(f.derivative(), LogSeries::monomial(q(-1, 1), 0));
    }

    #[test]
    fn display() {
        assert_eq!(resonant_op().to_string(), "D^2 + 3/2 x^-1 D - 15/16 x^-2");
    }

    fn arb_op() -> impl Strategy<Value = EulerOperator> {
        (1i64..=3, proptest::collection::vec((-4i64..=4, 1i64..=3), 4)).prop_map(|(n, cs)| {
            let mut op = EulerOperator::zero();
            for (j, &(a, b)) in cs.iter().enumerate().take(n as usize + 1) {
                op.add_term(n - j as i64, j as u32, Poly::constant(q(a, b)));
            }
            op
        })
    }

    proptest! {
        #[test]
        fn operator_indicial_consistency(op in arb_op(), sn in -9i64..=9, sd in 1i64..=4) {
            let s = q(sn, sd);
            let n = op.weight().unwrap();
            let qs = op.indicial().unwrap().to_numeric().unwrap();
            let got = op.apply(&LogSeries::monomial(s.clone(), 0));
            let want = LogSeries::term(&s - Rational::from_integer(n.into()), 0, Poly::constant(qs.eval(&s)));
            prop_assert_eq!(got, want);
        }

        #[test]
        fn log_action_law(op in arb_op(), sn in -9i64..=9, sd in 1i64..=4, k in 0u32..=3) {
            let s = q(sn, sd);
            let n = Rational::from_integer(op.weight().unwrap().into());
            let mut qd = op.indicial().unwrap().to_numeric().unwrap();
            let mut want = LogSeries::zero();
            for j in 0..=k {
                let c = binomial(k as u64, j as u64) * qd.eval(&s);
                want.add_term(&s - &n, k - j, Poly::constant(c));
                qd = qd.derivative();
            }
            prop_assert_eq!(op.apply(&LogSeries::monomial(s.clone(), k)), want);
        }

        #[test]
        fn composition_is_associative_on_series(a in arb_op(), b in arb_op(), sn in -9i64..=9, k in 0u32..=2) {
            let f = LogSeries::monomial(q(sn, 2), k);
            prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
        }
    }
}
