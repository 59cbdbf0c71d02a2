use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Poly, Rational, Symbol};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rescales to integer coefficients with content 1 and positive leading term.
pub fn primitive_part(p: &Poly) -> (Rational, Poly) {
    let Some((_, lead)) = p.leading() else {
        return (Rational::one(), Poly::zero());
    };
    let (mut num_gcd, mut den_lcm) = (BigInt::zero(), BigInt::one());
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut unit = Rational::new(den_lcm, num_gcd);
    if lead.is_negative() {
        unit = -unit;
    }
    (Rational::one() / &unit, p.scale(&unit))
}

/// The reducibility curve of (r, s) in the (c, h) plane, as a primitive
/// integer polynomial: (h - h_{r,s})(h - h_{s,r}) for r != s and
/// h - h_{r,r} for r = s, where c = 13 - 6(t + 1/t) and
/// h_{r,s} = (r^2-1)t/4 + (s^2-1)/(4t) - (rs-1)/2.
pub fn kac_factor(r: u32, s: u32) -> Poly {
    let (r, s) = (r as i64, s as i64);
    // u = t + 1/t
    let u = Poly::constant(q(13, 6)) - Poly::var(Symbol::C).scale(&q(1, 6));
    let h = Poly::var(Symbol::H);
    let a = q(r * r - 1, 4);
    let b = q(s * s - 1, 4);
    let k = q(r * s - 1, 2);
    let phi = if r == s {
        h - (u.scale(&a) - Poly::constant(k))
    } else {
        let sum = u.scale(&(&a + &b)) - Poly::constant(&k * q(2, 1));
        let prod = (&u * &u - Poly::from_i64(2)).scale(&(&a * &b))
            + Poly::constant(&a * &a + &b * &b + &k * &k)
            - u.scale(&(&k * (&a + &b)));
        &h * &h - &sum * &h + prod
    };
    primitive_part(&phi).1
}

/// A polynomial written as constant * prod factor^power * rest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factored {
    pub constant: Rational,
    pub factors: Vec<(Poly, u32)>,
    /// Cofactor not divisible by any candidate; 1 when fully factored.
    pub rest: Poly,
}

impl Factored {
    pub fn expand(&self) -> Poly {
        let mut out = self.rest.scale(&self.constant);
        for (f, e) in &self.factors {
            out = &out * &f.pow(*e);
        }
        out
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constant.is_zero() {
            return f.write_str("0");
        }
        let mut parts = vec![];
        if !self.constant.is_one() || (self.factors.is_empty() && self.rest.is_one()) {
            parts.push(self.constant.to_string());
        }
        for (p, e) in &self.factors {
            let base = if p.num_terms() == 1 && p.leading().is_some_and(|(_, c)| c.is_one()) {
                p.to_string()
            } else {
                format!("({p})")
            };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        if !self.rest.is_one() {
            parts.push(format!("[{}]", self.rest));
        }
        f.write_str(&parts.join(" "))
    }
}

/// Splits off the reducibility curves with rs <= level by exact division.
pub fn factor_determinant(det: &Poly, level: usize) -> Factored {
    if det.is_zero() {
        return Factored {
            constant: Rational::zero(),
            factors: vec![],
            rest: Poly::one(),
        };
    }
    let mut rest = det.clone();
    let mut factors = vec![];
    for r in 1..=level as u32 {
        for s in r..=level as u32 {
            if (r * s) as usize > level {
                break;
            }
            let phi = kac_factor(r, s);
            let mut e = 0;
            while let Some(quo) = rest.div_exact(&phi) {
                rest = quo;
                e += 1;
            }
            if e > 0 {
                factors.push((phi, e));
            }
        }
    }
    let (constant, rest) = match rest.constant_value() {
        Some(k) => (k, Poly::one()),
        None => primitive_part(&rest),
    };
    Factored {
        constant,
        factors,
        rest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vir_modules::{partitions, JordanVermaModule};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn low_curves() {
        assert_eq!(kac_factor(1, 1), p("h"));
        assert_eq!(kac_factor(1, 2), p("16h^2 + 2ch - 10h + c"));
        assert_eq!(kac_factor(1, 3), p("3h^2 + ch - 7h + 2 + c"));
        assert_eq!(kac_factor(2, 2), p("8h + c - 1"));
    }

    #[test]
    fn curves_vanish_on_minimal_model_weights() {
        // c = 1/2: h in {0, 1/16, 1/2}
        let c = q(1, 2);
        let at = |f: &Poly, h: Rational| f.eval_all(&[(Symbol::C, c.clone()), (Symbol::H, h)]).unwrap();
        assert!(at(&kac_factor(1, 2), q(1, 16)).is_zero() || at(&kac_factor(1, 2), q(1, 2)).is_zero());
        assert!(at(&kac_factor(1, 3), q(1, 2)).is_zero());
    }

    #[test]
    fn determinant_exponents_follow_partition_counts() {
        let m = JordanVermaModule::symbolic(1).unwrap();
        for level in 1..=4usize {
            let det = m.shapovalov_determinant(level).unwrap();
            let f = factor_determinant(&det, level);
            assert!(f.rest.is_one(), "level {level}: {f}");
            let pairs = (1..=level).flat_map(|r| (r..=level).filter(move |s| r * s <= level)).count();
            assert_eq!(f.factors.len(), pairs);
            for (phi, e) in &f.factors {
                let (r, s) = (1..=level as u32)
                    .flat_map(|r| (r..=level as u32).map(move |s| (r, s)))
                    .find(|&(r, s)| kac_factor(r, s) == *phi)
                    .unwrap();
                let want = partitions(level - (r * s) as usize).len() as u32;
                assert_eq!(*e, want, "level {level} ({r},{s})");
            }
            assert_eq!(f.expand(), det);
        }
    }

    #[test]
    fn level3_jordan2_display() {
        let det = JordanVermaModule::symbolic(2).unwrap().shapovalov_determinant(3).unwrap();
        assert_eq!(
            factor_determinant(&det, 3).to_string(),
            "2304 h^4 (2ch + 16h^2 + c - 10h)^2 (ch + 3h^2 + c - 7h + 2)^2"
        );
    }
}
