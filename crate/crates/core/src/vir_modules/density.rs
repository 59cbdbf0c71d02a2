use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Poly, Symbol};

/// F_{λ,μ,n,β}: basis u_r^{(i)}, r ∈ Z, 0 <= i <= n, with
/// L_m u_r^{(i)} = (μ + r + λ(m+1)) u_{r-m}^{(i)} + β i u_{r-m}^{(i-1)}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensityModule {
    pub lambda: Poly,
    pub mu: Poly,
    pub beta: Poly,
    pub depth: usize,
}

impl DensityModule {
    pub fn new(lambda: Poly, mu: Poly, beta: Poly, depth: usize) -> Self {
        DensityModule {
            lambda,
            mu,
            beta,
            depth,
        }
    }

    /// λ, μ, β kept as symbols.
    pub fn symbolic(depth: usize) -> Self {
        Self::new(
            Poly::var(Symbol::Lambda),
            Poly::var(Symbol::Mu),
            Poly::var(Symbol::Beta),
            depth,
        )
    }

    pub fn apply(&self, m: i64, v: &DensityVector) -> Result<DensityVector> {
        let mut out = DensityVector::zero();
        for (&(r, i), c) in &v.terms {
            let img = density_action(self, m, (r, i))?;
            for (&l, d) in &img.terms {
                out.add_term(l, c * d);
            }
        }
        Ok(out)
    }
}

/// Finite combination of u_r^{(i)}, keyed by (r, i).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DensityVector {
    terms: BTreeMap<(i64, usize), Poly>,
}

impl DensityVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(r: i64, i: usize) -> Self {
        let mut v = Self::zero();
        v.add_term((r, i), Poly::one());
        v
    }

    pub fn add_term(&mut self, label: (i64, usize), c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(Poly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, r: i64, i: usize) -> Poly {
        self.terms.get(&(r, i)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, usize), &Poly)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&l, c) in &o.terms {
            out.add_term(l, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Poly) -> Self {
        let mut out = Self::zero();
        for (&l, c) in &self.terms {
            out.add_term(l, c * k);
        }
        out
    }
}

impl fmt::Display for DensityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((r, i), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})u[{r}]^({i})")?;
        }
        Ok(())
    }
}

pub fn density_action(module: &DensityModule, m: i64, label: (i64, usize)) -> Result<DensityVector> {
    let (r, i) = label;
    if i > module.depth {
        return Err(Error::LabelOutOfRange(format!(
            "u_{r}^({i}) in a module of log-depth {}",
            module.depth
        )));
    }
    let mut out = DensityVector::zero();
    let diag = &(&module.mu + &Poly::from_i64(r)) + &(&module.lambda * &Poly::from_i64(m + 1));
    out.add_term((r - m, i), diag);
    if i > 0 {
        out.add_term((r - m, i - 1), module.beta.scale(&crate::Rational::from_integer(i.into())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn l1_on_u0_depth1() {
        let f = DensityModule::symbolic(1);
        let out = density_action(&f, 1, (0, 1)).unwrap();
        let mut want = DensityVector::zero();
        want.add_term((-1, 1), p("μ + 2λ"));
        want.add_term((-1, 0), p("β"));
        assert_eq!(out, want);
    }

    #[test]
    fn l0_on_bottom_layer() {
        let f = DensityModule::symbolic(1);
        let out = density_action(&f, 0, (3, 0)).unwrap();
        let mut want = DensityVector::zero();
        want.add_term((3, 0), p("μ + 3 + λ"));
        assert_eq!(out, want);
    }

    #[test]
    fn beta_zero_is_classical_per_layer() {
        let f = DensityModule::new(p("λ"), p("μ"), Poly::zero(), 2);
        for i in 0..=2 {
            let out = density_action(&f, -2, (1, i)).unwrap();
            assert_eq!(out.terms().count(), 1);
            assert_eq!(out.coeff(3, i), p("μ + 1 - λ"));
        }
    }

    #[test]
    fn out_of_range() {
        let f = DensityModule::symbolic(1);
        assert!(matches!(density_action(&f, 0, (0, 2)), Err(Error::LabelOutOfRange(_))));
    }

    #[test]
    fn witt_relation() {
        let f = DensityModule::symbolic(1);
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                for r in -4i64..=4 {
                    for i in 0..=1 {
                        let u = DensityVector::basis(r, i);
                        let lhs = f
                            .apply(m, &f.apply(n, &u).unwrap())
                            .unwrap()
                            .add(&f.apply(n, &f.apply(m, &u).unwrap()).unwrap().scale(&-Poly::one()));
                        let rhs = f.apply(m + n, &u).unwrap().scale(&Poly::from_i64(m - n));
                        assert_eq!(lhs, rhs, "m={m} n={n} r={r} i={i}");
                    }
                }
            }
        }
    }
}
