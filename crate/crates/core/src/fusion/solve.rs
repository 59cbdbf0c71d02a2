use num_traits::{One, Zero};

use super::{EulerOperator, LogSeries};
use crate::error::{Error, Result};
use crate::exact_arith::{binomial, rational_roots};
use crate::{Poly, QPoly, Rational, SymPoly, Symbol};

/// Indicial polynomial of a singular-vector operator and its translation to
/// the target weight h3 = s + h1 + h2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndicialData {
    pub level: usize,
    /// q(s), in the symbol s.
    pub indicial: SymPoly,
    /// q(h3 - h1 - h2), in the symbol h3.
    pub fusion_h3: SymPoly,
    /// Rational roots in h3 with multiplicities, ascending.
    pub roots: Vec<(Rational, usize)>,
    /// Monic factor of the fusion polynomial without rational roots.
    pub residual: QPoly,
    pub logarithmic: bool,
}

pub fn indicial_polynomial(op: &EulerOperator, h1: &Poly, h2: &Poly) -> Result<IndicialData> {
    let level = op.weight()?;
    let indicial = op.indicial()?;
    let shift = SymPoly::new(Symbol::H3, vec![-(h1 + h2), Poly::one()]);
    let fusion_h3 = indicial.compose(&shift);
    let numeric = fusion_h3.to_numeric().ok_or(Error::SymbolicRoots)?;
    let report = rational_roots(&numeric)?;
    let logarithmic = report.roots.iter().any(|&(_, m)| m >= 2);
    Ok(IndicialData {
        level: level.max(0) as usize,
        indicial,
        fusion_h3,
        roots: report.roots,
        residual: report.residual,
        logarithmic,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EulerSolution {
    /// x^r log^j(x) for every root r of multiplicity μ and j < μ.
    pub homogeneous: Vec<LogSeries>,
    pub particular: LogSeries,
}

/// Formal solutions of op f = rhs where rhs is zero or one term
/// A x^{s0} log^p(x).
///
/// The particular solution is sought as sum_k a_k x^s log^k(x) with
/// s = s0 + N. If s is a root of q of multiplicity μ, the log degree rises
/// to p + μ and the coefficients a_k with k < μ (which are homogeneous) are
/// set to zero. The remaining ones follow top-down from
/// op (x^s log^k) = sum_j C(k,j) q^{(j)}(s) x^{s-N} log^{k-j}.
pub fn solve_euler(op: &EulerOperator, rhs: &LogSeries) -> Result<EulerSolution> {
    let n = op.weight()?;
    let q = op.indicial()?.to_numeric().ok_or(Error::NeedsNumeric)?;
    let report = rational_roots(&q)?;
    if report.residual.degree().unwrap_or(0) > 0 {
        return Err(Error::IrrationalRoots(report.residual.to_string()));
    }
    let homogeneous = report
        .roots
        .iter()
        .flat_map(|(r, m)| (0..*m as u32).map(move |j| LogSeries::monomial(r.clone(), j)))
        .collect();
    if rhs.is_zero() {
        return Ok(EulerSolution {
            homogeneous,
            particular: LogSeries::zero(),
        });
    }
    if rhs.num_terms() != 1 {
        return Err(Error::RhsNotSingleTerm);
    }
    let (s0, p, a) = rhs.terms().next().expect("one term");
    let s = s0 + Rational::from_integer(n.into());
    let mu = report.multiplicity(&s);

    // derivatives q^{(j)}(s)
    let mut derivs = vec![];
    let mut qd = q.clone();
    while !qd.is_zero() {
        derivs.push(qd.eval(&s));
        qd = qd.derivative();
    }
    let qj = |j: usize| derivs.get(j).cloned().unwrap_or_else(Rational::zero);

    let top = p as usize + mu;
    let mut coeffs = vec![Poly::zero(); top + 1];
    for l in (0..=p as usize).rev() {
        let mut target = if l == p as usize { a.clone() } else { Poly::zero() };
        for (k, ak) in coeffs.iter().enumerate().skip(l + mu + 1) {
            let c = binomial(k as u64, (k - l) as u64) * qj(k - l);
            target -= ak.scale(&c);
        }
        let lead_l = binomial((l + mu) as u64, mu as u64) * qj(mu);
        coeffs[l + mu] = target.scale(&(Rational::one() / lead_l));
    }
    let mut particular = LogSeries::zero();
    for (k, ak) in coeffs.into_iter().enumerate() {
        particular.add_term(s.clone(), k as u32, ak);
    }
    Ok(EulerSolution {
        homogeneous,
        particular,
    })
}
