use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{solve_euler, EulerOperator, LogSeries};
use crate::error::{Error, Result};
use crate::vir_modules::{singular_vectors, BasisLabel, JordanVermaModule, ModuleVector};
use crate::{Poly, QPoly, Rational, Symbol};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// [L(n), Y(w,x)] = (x^{n+1} d/dx + (n+1) h x^n) Y(w,x) for a primary w of
/// weight h.
pub fn primary_commutator(n: i64, h: &Poly) -> EulerOperator {
    let mut op = EulerOperator::term(-(n + 1), 1, Poly::one());
    op.add_term(-n, 0, h.scale(&Rational::from_integer((n + 1).into())));
    op
}

/// Operator for a combination of words of negative modes: each L(-p)
/// becomes -(x^{1-p} d/dx + (1-p) h1 x^{-p}); factors compose left to right.
pub fn descent_operator_words(words: &[(Vec<i64>, Poly)], h1: &Poly) -> Result<EulerOperator> {
    let mut out = EulerOperator::zero();
    for (word, coef) in words {
        let mut op = EulerOperator::identity();
        for &m in word {
            if m >= 0 {
                return Err(Error::NonNegativeMode(m));
            }
            let factor = primary_commutator(m, h1).scale(&-Poly::one());
            op = op.compose(&factor);
        }
        out = out.add(&op.scale(coef));
    }
    Ok(out)
}

/// Operator attached to a singular vector of M(c,h2), acting on
/// <w3', Y(w1,x) w2> where w1 has weight h1.
pub fn descent_operator(sing: &ModuleVector, h1: &Poly) -> Result<EulerOperator> {
    let mut words = vec![];
    for (label, coef) in sing.terms() {
        if label.top != 1 {
            return Err(Error::Shape(format!(
                "descent needs a vector on the first top vector, got {label}"
            )));
        }
        words.push((label.modes(), coef.clone()));
    }
    descent_operator_words(&words, h1)
}

/// Fusion polynomials printed for the reference cases.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixtureCase {
    /// c = 1, h1 = m^2/4, h2 = n^2/4.
    C1 { m: u32, n: u32 },
    /// c = -2, h1 = h2 = -1/8.
    CMinus2,
    /// c = 0, h1 = h2 = ((3p-2)^2 - 1)/24, p even.
    C0 { p: u32 },
}

impl FixtureCase {
    fn validate(self) -> Result<Self> {
        match self {
            FixtureCase::C1 { m, n } if m == 0 || n == 0 => Err(Error::FixtureParams(format!(
                "c1 needs m, n >= 1, got ({m},{n})"
            ))),
            FixtureCase::C0 { p } if p < 2 || p % 2 == 1 => {
                Err(Error::FixtureParams(format!("c0 needs even p >= 2, got {p}")))
            }
            ok => Ok(ok),
        }
    }

    /// (c, h1, h2, level of the lowest singular vector of M(c,h2)).
    pub fn params(self) -> Result<(Rational, Rational, Rational, usize)> {
        Ok(match self.validate()? {
            FixtureCase::C1 { m, n } => (
                q(1, 1),
                q((m * m) as i64, 4),
                q((n * n) as i64, 4),
                n as usize + 1,
            ),
            FixtureCase::CMinus2 => (q(-2, 1), q(-1, 8), q(-1, 8), 2),
            FixtureCase::C0 { p } => {
                let m = 3 * p as i64 - 2;
                let h = q(m * m - 1, 24);
                (q(0, 1), h.clone(), h, p as usize)
            }
        })
    }
}

impl fmt::Display for FixtureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureCase::C1 { m, n } => write!(f, "c1({m},{n})"),
            FixtureCase::CMinus2 => f.write_str("cminus2"),
            FixtureCase::C0 { p } => write!(f, "c0({p})"),
        }
    }
}

impl FromStr for FixtureCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::FixtureParams(format!("unknown case {s:?}"));
        let args = |body: &str| -> Result<Vec<u32>> {
            body.strip_suffix(')')
                .ok_or_else(bad)?
                .split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        let case = if s == "cminus2" {
            FixtureCase::CMinus2
        } else if let Some(body) = s.strip_prefix("c1(") {
            match args(body)?[..] {
                [m, n] => FixtureCase::C1 { m, n },
                _ => return Err(bad()),
            }
        } else if let Some(body) = s.strip_prefix("c0(") {
            match args(body)?[..] {
                [p] => FixtureCase::C0 { p },
                _ => return Err(bad()),
            }
        } else {
            return Err(bad());
        };
        case.validate()
    }
}

/// The printed fusion polynomial of a case, in x.
pub fn fixture_polynomial(case: FixtureCase) -> Result<QPoly> {
    let x = QPoly::x(Symbol::X);
    let one = QPoly::constant(Symbol::X, q(1, 1));
    Ok(match case.validate()? {
        FixtureCase::C1 { m, n } => {
            // J = {m+n, m+n-2, ..., m-n}, n+1 entries, negative ones included
            let (m, n) = (m as i64, n as i64);
            (0..=n).fold(one, |acc, k| {
                let i = m + n - 2 * k;
                acc.mul(&QPoly::linear_root(Symbol::X, q(i * i, 4)))
            })
        }
        FixtureCase::CMinus2 => x.pow(2),
        FixtureCase::C0 { p } => {
            let p = p as i64;
            // n runs over 1/2, 3/2, ..., (p-1)/2; write n = t/2 with t odd
            (1..p).step_by(2).fold(one, |acc, t| {
                let a = q((3 * p - 1 - 3 * t) * (3 * p - 3 - 3 * t), 24);
                let b = q((3 * p - 1 + 3 * t) * (3 * p - 3 + 3 * t), 24);
                let fa = QPoly::constant(Symbol::X, a).sub(&x);
                let fb = QPoly::constant(Symbol::X, b).sub(&x);
                acc.mul(&fa).mul(&fb)
            })
        }
    })
}

/// a in Y(w1,x)w1 = x^{-2h} 1 + a x^{2-2h} L(-2)1 + ..., derived by letting
/// [L(2), Y(w1,x)] act on the leading term and dividing by the norm of
/// L(-2)1 in M(c,0).
pub fn ope_level2_coefficient(c: &Rational, h: &Rational) -> Result<Rational> {
    let vacuum = JordanVermaModule::numeric(c.clone(), Rational::zero(), 1)?;
    let gram = vacuum.shapovalov_matrix(2)?;
    let basis = vacuum.level_basis(2);
    let idx = basis
        .iter()
        .position(|l| *l == BasisLabel::new(vec![2], 1))
        .expect("L(-2) in level 2 basis");
    let norm = gram.get(idx, idx).constant_value().expect("numeric");
    if norm.is_zero() {
        return Err(Error::CentralTermDegenerate(format!(
            "(L(-2)1, L(-2)1) = {norm} at c = {c}"
        )));
    }
    let lead = LogSeries::monomial(-(h * Rational::from_integer(2.into())), 0);
    let image = primary_commutator(2, &Poly::constant(h.clone())).apply(&lead);
    let s = Rational::from_integer(2.into()) - h * Rational::from_integer(2.into());
    let pairing = image.coeff(&s, 0).constant_value().expect("numeric");
    Ok(pairing / norm)
}

/// Log coefficient μ in Y(w1,x)w1 ∋ μ log(x) x^{2-2h} t^{(0)}(-2)1 at c = 0,
/// from the level-2 singular operator of M(0,h) with right-hand side
/// <t', t^{(0)}(-2) v_b> x^{-2h} = (2b/3) x^{-2h}.
pub fn log_coefficient_mu(h: &Rational) -> Result<Rational> {
    let m = JordanVermaModule::numeric(Rational::zero(), h.clone(), 1)?;
    if !singular_vectors(&m, 1)?.is_empty() {
        return Err(Error::OutsideFamily(format!(
            "M(0,{h}) has a singular vector at level 1"
        )));
    }
    let sing = singular_vectors(&m, 2)?;
    let [v] = &sing[..] else {
        return Err(Error::OutsideFamily(format!(
            "M(0,{h}) has no level-2 singular vector"
        )));
    };
    let hp = Poly::constant(h.clone());
    let op = descent_operator(v, &hp)?;
    let pairing = Poly::var(Symbol::B).scale(&q(2, 3));
    let rhs = LogSeries::term(-(h * Rational::from_integer(2.into())), 0, pairing.clone());
    let sol = solve_euler(&op, &rhs)?;
    let s = Rational::from_integer(2.into()) - h * Rational::from_integer(2.into());
    let log_coeff = sol.particular.coeff(&s, 1);
    if log_coeff.is_zero() {
        return Err(Error::NotResonant);
    }
    log_coeff
        .div_exact(&pairing)
        .and_then(|mu| mu.constant_value())
        .ok_or_else(|| Error::OutsideFamily("log coefficient not proportional to b".into()))
}

/// b such that 2h/b equals the log coefficient μ.
pub fn determine_b(h: &Rational) -> Result<Rational> {
    let mu = log_coefficient_mu(h)?;
    Ok(h * Rational::from_integer(2.into()) / mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational_roots;
    use crate::fusion::indicial_polynomial;

    fn lowest_singular(c: &Rational, h: &Rational, level: usize) -> ModuleVector {
        let m = JordanVermaModule::numeric(c.clone(), h.clone(), 1).unwrap();
        let sing = singular_vectors(&m, level).unwrap();
        assert_eq!(sing.len(), 1, "one singular vector at level {level}");
        sing[0].clone()
    }

    fn word(parts: &[i64], c: Rational) -> (Vec<i64>, Poly) {
        (parts.to_vec(), Poly::constant(c))
    }

    #[test]
    fn resonant_operator_from_singular_vector() {
        let h = q(5, 8);
        let v = lowest_singular(&q(0, 1), &h, 2);
        let op = descent_operator(&v, &Poly::constant(h)).unwrap();
        let mut want = EulerOperator::term(0, 2, Poly::one());
        want.add_term(1, 1, Poly::constant(q(3, 2)));
        want.add_term(2, 0, Poly::constant(q(-15, 16)));
        assert_eq!(op, want);
    }

    #[test]
    fn single_l_minus_1() {
        for h1 in [q(0, 1), q(7, 3)] {
            let op = descent_operator_words(&[word(&[-1], q(1, 1))], &Poly::constant(h1)).unwrap();
            assert_eq!(op, EulerOperator::term(0, 1, Poly::from_i64(-1)));
        }
    }

    #[test]
    fn cminus2_operator() {
        let op = descent_operator_words(
            &[word(&[-1, -1], q(1, 1)), word(&[-2], q(-1, 2))],
            &Poly::constant(q(-1, 8)),
        )
        .unwrap();
        let mut want = EulerOperator::term(0, 2, Poly::one());
        want.add_term(1, 1, Poly::constant(q(1, 2)));
        want.add_term(2, 0, Poly::constant(q(1, 16)));
        assert_eq!(op, want);
    }

    #[test]
    fn non_negative_mode_rejected() {
        let r = descent_operator_words(&[word(&[-1, 0], q(1, 1))], &Poly::zero());
        assert_eq!(r, Err(Error::NonNegativeMode(0)));
    }

    fn case_data(case: FixtureCase) -> crate::fusion::IndicialData {
        let (c, h1, h2, level) = case.params().unwrap();
        let v = lowest_singular(&c, &h2, level);
        let op = descent_operator(&v, &Poly::constant(h1.clone())).unwrap();
        indicial_polynomial(&op, &Poly::constant(h1), &Poly::constant(h2)).unwrap()
    }

    #[test]
    fn fusion_c0() {
        let d = case_data(FixtureCase::C0 { p: 2 });
        assert_eq!(d.roots, vec![(q(0, 1), 1), (q(2, 1), 1)]);
        assert!(!d.logarithmic);
        // divides x(x-2) up to a scalar
        let fix = fixture_polynomial(FixtureCase::C0 { p: 2 }).unwrap();
        let ours = d.fusion_h3.to_numeric().unwrap().with_var(Symbol::X);
        let (_, r) = fix.div_rem(&ours).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn fusion_c0_level4() {
        let case = FixtureCase::C0 { p: 4 };
        let d = case_data(case);
        let fix = rational_roots(&fixture_polynomial(case).unwrap()).unwrap();
        assert_eq!(d.roots, fix.roots);
    }

    #[test]
    fn fusion_cminus2() {
        let d = case_data(FixtureCase::CMinus2);
        assert_eq!(d.roots, vec![(q(0, 1), 2)]);
        assert!(d.logarithmic);
    }

    #[test]
    fn fusion_c1_root_sets() {
        for m in 1..=3u32 {
            for n in 1..=m {
                let case = FixtureCase::C1 { m, n };
                let d = case_data(case);
                let fix = rational_roots(&fixture_polynomial(case).unwrap()).unwrap();
                let ours: Vec<_> = d.roots.iter().map(|(r, _)| r.clone()).collect();
                let theirs: Vec<_> = fix.roots.iter().map(|(r, _)| r.clone()).collect();
                assert_eq!(ours, theirs, "{case}");
            }
        }
    }

    #[test]
    fn fixture_polynomials() {
        let show = |c: &str| fixture_polynomial(c.parse().unwrap()).unwrap().to_string();
        assert_eq!(show("c1(1,1)"), "x^2 - x");
        // m < n keeps the negative entries of J, so 1/4 appears twice
        assert_eq!(show("c1(1,2)"), "x^3 - 11/4x^2 + 19/16x - 9/64");
        assert_eq!(show("cminus2"), "x^2");
        assert_eq!(show("c0(2)"), "x^2 - 2x");
        let r = rational_roots(&fixture_polynomial(FixtureCase::C0 { p: 4 }).unwrap()).unwrap();
        let roots: Vec<_> = r.roots.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(roots, vec![q(0, 1), q(2, 1), q(7, 1), q(15, 1)]);
        assert!("c0(3)".parse::<FixtureCase>().is_err());
        assert!("c1(0,1)".parse::<FixtureCase>().is_err());
        assert!("c7".parse::<FixtureCase>().is_err());
        assert_eq!("c1(2, 1)".parse::<FixtureCase>().unwrap().to_string(), "c1(2,1)");
    }

    #[test]
    fn ope_coefficient() {
        assert_eq!(ope_level2_coefficient(&q(1, 2), &q(1, 16)).unwrap(), q(1, 4));
        assert_eq!(ope_level2_coefficient(&q(-7, 3), &q(0, 1)).unwrap(), q(0, 1));
        assert!(matches!(
            ope_level2_coefficient(&q(0, 1), &q(5, 8)),
            Err(Error::CentralTermDegenerate(_))
        ));
    }

    #[test]
    fn b_for_five_eighths() {
        assert_eq!(log_coefficient_mu(&q(5, 8)).unwrap(), q(1, 2));
        assert_eq!(determine_b(&q(5, 8)).unwrap(), q(5, 2));
        assert!(matches!(determine_b(&q(0, 1)), Err(Error::OutsideFamily(_))));
        assert!(matches!(determine_b(&q(1, 3)), Err(Error::OutsideFamily(_))));
    }
}
