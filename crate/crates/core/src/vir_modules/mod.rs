//! Generalized Verma modules M_n(c,h) whose top level is a single Jordan
//! block of L(0), together with their Shapovalov forms, singular vectors and
//! the density modules F_{λ,μ,n,β}.
//!
//! Basis of level m: labels `L(-p_1)...L(-p_k) v_i` with p_1 <= ... <= p_k a
//! partition of m and 1 <= i <= n. Labels are ordered top-index-major (all
//! v_1 vectors, then all v_2 vectors, ...) and, inside a block,
//! lexicographically in the ascending part list, so level three reads
//! L(-1)^3, L(-1)L(-2), L(-3).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::binomial;
use crate::virasoro::{Normalizer, VirMode};
use crate::{Poly, Rational, Symbol};

mod density;
mod kac;
mod shapovalov;
mod singular;

pub use density::{density_action, DensityModule, DensityVector};
pub use kac::{factor_determinant, kac_factor, primitive_part, Factored};
pub use singular::{check_hom_pair, radical_dimension, singular_vectors};

/// M_n(c,h): L(0) v_i = h v_i + v_{i-1} (v_0 = 0) and L(k) v_i = 0 for k > 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanVermaModule {
    c: Poly,
    h: Poly,
    jordan: usize,
}

impl JordanVermaModule {
    pub fn new(c: Poly, h: Poly, jordan: usize) -> Result<Self> {
        if jordan == 0 {
            return Err(Error::ZeroJordan);
        }
        Ok(JordanVermaModule { c, h, jordan })
    }

    /// Central charge and lowest weight left as the symbols c and h.
    pub fn symbolic(jordan: usize) -> Result<Self> {
        Self::new(Poly::var(Symbol::C), Poly::var(Symbol::H), jordan)
    }

    pub fn numeric(c: Rational, h: Rational, jordan: usize) -> Result<Self> {
        Self::new(Poly::constant(c), Poly::constant(h), jordan)
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn jordan(&self) -> usize {
        self.jordan
    }

    pub fn is_numeric(&self) -> bool {
        self.c.is_constant() && self.h.is_constant()
    }

    /// Numeric values of (c, h), if both are numbers.
    pub fn numeric_params(&self) -> Option<(Rational, Rational)> {
        Some((self.c.constant_value()?, self.h.constant_value()?))
    }

    pub(crate) fn check_unmixed(&self) -> Result<()> {
        if self.c.is_constant() != self.h.is_constant() {
            return Err(Error::ParameterMix);
        }
        Ok(())
    }

    pub fn level_basis(&self, level: usize) -> Vec<BasisLabel> {
        let parts = partitions(level);
        (1..=self.jordan)
            .flat_map(|top| {
                parts.iter().map(move |p| BasisLabel {
                    top,
                    parts: p.clone(),
                })
            })
            .collect()
    }

    /// Action of L(k) on a vector.
    pub fn apply_mode(&self, k: i64, vec: &ModuleVector) -> ModuleVector {
        ModeAction::new(self).apply(k, vec)
    }

    /// Basis vector as a module vector.
    pub fn basis_vector(&self, label: &BasisLabel) -> ModuleVector {
        ModuleVector::from_terms(label.level(), [(label.clone(), Poly::one())])
    }
}

/// Partitions of `n` as ascending part lists, sorted lexicographically.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rem {
            if rem - p != 0 && rem - p < p {
                continue;
            }
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(n as u32, 1, &mut vec![], &mut out);
    out.sort();
    out
}

/// `L(-p_1)...L(-p_k) v_top`, parts ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BasisLabel {
    pub top: usize,
    pub parts: Vec<u32>,
}

impl BasisLabel {
    pub fn new(mut parts: Vec<u32>, top: usize) -> Self {
        parts.sort();
        BasisLabel { top, parts }
    }

    pub fn level(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn modes(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| -(p as i64)).collect()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            write!(f, "L(-{p})")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        write!(f, "v{}", self.top)
    }
}

/// Homogeneous vector of a Jordan Verma module. The level of a zero vector
/// carries no information: all zero vectors compare equal and add freely.
#[derive(Clone, Debug)]
pub struct ModuleVector {
    level: usize,
    terms: BTreeMap<BasisLabel, Poly>,
}

impl PartialEq for ModuleVector {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (self.level == o.level || self.terms.is_empty())
    }
}

impl Eq for ModuleVector {}

impl ModuleVector {
    pub fn zero(level: usize) -> Self {
        ModuleVector {
            level,
            terms: BTreeMap::new(),
        }
    }

    /// Panics if a label is not at `level`.
    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (BasisLabel, Poly)>) -> Self {
        let mut v = Self::zero(level);
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    pub fn from_coords(level: usize, basis: &[BasisLabel], coords: &[Rational]) -> Self {
        Self::from_terms(
            level,
            basis
                .iter()
                .zip(coords)
                .map(|(l, c)| (l.clone(), Poly::constant(c.clone()))),
        )
    }

    pub fn add_term(&mut self, label: BasisLabel, c: Poly) {
        assert_eq!(label.level(), self.level, "label {label} off level {}", self.level);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label.clone()).or_insert_with(Poly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> Poly {
        self.terms.get(label).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Poly::one()))
    }

    pub fn scale(&self, k: &Poly) -> Self {
        Self::from_terms(self.level, self.terms.iter().map(|(l, c)| (l.clone(), c * k)))
    }

    /// Coordinates in the given basis; `None` if a coefficient is symbolic.
    pub fn coords(&self, basis: &[BasisLabel]) -> Option<Vec<Rational>> {
        basis.iter().map(|l| self.coeff(l).constant_value()).collect()
    }

    /// Keeps only the terms on top vector `top`.
    pub fn top_component(&self, top: usize) -> Self {
        Self::from_terms(
            self.level,
            self.terms
                .iter()
                .filter(|(l, _)| l.top == top)
                .map(|(l, c)| (l.clone(), c.clone())),
        )
    }

    /// Re-labels every term onto a different top vector.
    pub fn retop(&self, from: usize, to: usize) -> Self {
        Self::from_terms(
            self.level,
            self.terms.iter().filter(|(l, _)| l.top == from).map(|(l, c)| {
                (
                    BasisLabel {
                        top: to,
                        parts: l.parts.clone(),
                    },
                    c.clone(),
                )
            }),
        )
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "({c}){l}")?;
            }
        }
        Ok(())
    }
}

/// Reusable mode action: keeps one normal-ordering cache across calls.
pub struct ModeAction<'m> {
    module: &'m JordanVermaModule,
    norm: Normalizer,
}

impl<'m> ModeAction<'m> {
    pub fn new(module: &'m JordanVermaModule) -> Self {
        ModeAction {
            module,
            norm: Normalizer::new(),
        }
    }

    /// L(0)^a v_top = sum_t C(a,t) h^{a-t} v_{top-t}.
    fn jordan_power(&self, a: usize, top: usize) -> Vec<(usize, Poly)> {
        (0..=a.min(top - 1))
            .map(|t| {
                let c = binomial(a as u64, t as u64);
                (top - t, self.module.h.pow((a - t) as u32).scale(&c))
            })
            .collect()
    }

    /// Applies a word of modes (leftmost acts last) to one basis label and
    /// collects the result, given the level of the output.
    fn apply_word_to_label(
        &mut self,
        word: &[VirMode],
        label: &BasisLabel,
        coef: &Poly,
        out: &mut ModuleVector,
    ) {
        let mut full: Vec<VirMode> = word.to_vec();
        full.extend(label.modes().into_iter().map(VirMode::L));
        for ((modes, cpow), r) in self.norm.word(&full) {
            if modes.last().is_some_and(|&m| m > 0) {
                continue;
            }
            let zeros = modes.iter().filter(|&&m| m == 0).count();
            let parts: Vec<u32> = modes
                .iter()
                .filter(|&&m| m < 0)
                .map(|&m| (-m) as u32)
                .collect();
            let base = &self.module.c.pow(cpow).scale(&r) * coef;
            for (top, hp) in self.jordan_power(zeros, label.top) {
                out.add_term(BasisLabel { top, parts: parts.clone() }, &base * &hp);
            }
        }
    }

    pub fn apply(&mut self, k: i64, vec: &ModuleVector) -> ModuleVector {
        let new_level = vec.level as i64 - k;
        if new_level < 0 {
            return ModuleVector::zero(0);
        }
        let mut out = ModuleVector::zero(new_level as usize);
        for (label, coef) in &vec.terms {
            self.apply_word_to_label(&[VirMode::L(k)], label, coef, &mut out);
        }
        out
    }

    /// Applies a whole word (leftmost generator acts last).
    pub fn apply_word(&mut self, word: &[VirMode], vec: &ModuleVector) -> ModuleVector {
        let shift: i64 = word
            .iter()
            .map(|g| match g {
                VirMode::L(n) => *n,
                VirMode::Central => 0,
            })
            .sum();
        let new_level = vec.level as i64 - shift;
        if new_level < 0 {
            return ModuleVector::zero(0);
        }
        let mut out = ModuleVector::zero(new_level as usize);
        for (label, coef) in &vec.terms {
            self.apply_word_to_label(word, label, coef, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn lab(parts: &[u32], top: usize) -> BasisLabel {
        BasisLabel::new(parts.to_vec(), top)
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![1, 2], vec![3]]);
    }

    #[test]
    fn level_bases() {
        let m1 = JordanVermaModule::symbolic(1).unwrap();
        assert_eq!(m1.level_basis(2), vec![lab(&[1, 1], 1), lab(&[2], 1)]);
        let m2 = JordanVermaModule::symbolic(2).unwrap();
        assert_eq!(m2.level_basis(3).len(), 6);
        assert_eq!(m2.level_basis(0), vec![lab(&[], 1), lab(&[], 2)]);
        assert!(JordanVermaModule::symbolic(0).is_err());
    }

    #[test]
    fn l1_on_l_minus_1_w_at_zero() {
        let m = JordanVermaModule::numeric(q(0, 1), q(0, 1), 2).unwrap();
        let out = m.apply_mode(1, &m.basis_vector(&lab(&[1], 2)));
        assert_eq!(
            out,
            ModuleVector::from_terms(0, [(lab(&[], 1), Poly::from_i64(2))])
        );
    }

    #[test]
    fn l2_on_l_minus_2_v_symbolic() {
        let m = JordanVermaModule::symbolic(1).unwrap();
        let out = m.apply_mode(2, &m.basis_vector(&lab(&[2], 1)));
        let want: Poly = "4h + 1/2c".parse().unwrap();
        assert_eq!(out, ModuleVector::from_terms(0, [(lab(&[], 1), want)]));
    }

    #[test]
    fn l0_on_w_is_jordan() {
        let m = JordanVermaModule::symbolic(2).unwrap();
        let out = m.apply_mode(0, &m.basis_vector(&lab(&[], 2)));
        let want = ModuleVector::from_terms(
            0,
            [(lab(&[], 2), Poly::var(Symbol::H)), (lab(&[], 1), Poly::one())],
        );
        assert_eq!(out, want);
    }

    #[test]
    fn annihilation_below_the_top() {
        let m = JordanVermaModule::symbolic(2).unwrap();
        assert!(m.apply_mode(3, &m.basis_vector(&lab(&[1, 1], 1))).is_zero());
        assert!(m.apply_mode(1, &m.basis_vector(&lab(&[], 2))).is_zero());
    }

    fn random_vector(m: &JordanVermaModule, level: usize, coeffs: &[i64]) -> ModuleVector {
        let basis = m.level_basis(level);
        ModuleVector::from_terms(
            level,
            basis
                .iter()
                .zip(coeffs.iter().cycle())
                .map(|(l, &c)| (l.clone(), Poly::from_i64(c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn commutator_consistency(
            cn in -6i64..=6, cd in 1i64..=4, hn in -6i64..=6, hd in 1i64..=4,
            level in 0usize..=4,
            m in -4i64..=4, n in -4i64..=4,
            coeffs in proptest::collection::vec(-3i64..=3, 1..8),
        ) {
            let c = q(cn, cd);
            let module = JordanVermaModule::numeric(c.clone(), q(hn, hd), 2).unwrap();
            let u = random_vector(&module, level, &coeffs);
            let mut act = ModeAction::new(&module);
            let nu = act.apply(n, &u);
            let mu = act.apply(m, &u);
            let lhs = act.apply(m, &nu).sub(&act.apply(n, &mu));
            let mut rhs = act.apply(m + n, &u).scale(&Poly::from_i64(m - n));
            if m + n == 0 {
                let k = crate::virasoro::central_coefficient(m) * c;
                rhs = rhs.add(&u.scale(&Poly::constant(k)));
            }
            if lhs.is_zero() && rhs.is_zero() {
                return Ok(());
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jordan_sequence_shadow(
            level in 0usize..=4, k in -3i64..=3,
            coeffs in proptest::collection::vec(-3i64..=3, 1..8),
        ) {
            let m2 = JordanVermaModule::symbolic(2).unwrap();
            let m1 = JordanVermaModule::symbolic(1).unwrap();
            let u = random_vector(&m2, level, &coeffs);
            let out = m2.apply_mode(k, &u);
            // v-span is a copy of M(c,h)
            let sub = u.top_component(1);
            prop_assert_eq!(m2.apply_mode(k, &sub), m1.apply_mode(k, &sub));
            // quotient by the v-span is M(c,h) through w -> v
            let quot = m1.apply_mode(k, &u.retop(2, 1));
            prop_assert_eq!(out.retop(2, 1), quot);
        }
    }
}
