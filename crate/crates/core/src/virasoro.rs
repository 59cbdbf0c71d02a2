//! Normal ordering in the universal enveloping algebra of the Virasoro
//! algebra, with the central element C kept symbolic.
//!
//! Canonical PBW order: creation modes L(-n) first, by increasing n (so
//! `L(-1)L(-2)` is canonical, as in the written basis L(-1)^3, L(-1)L(-2),
//! L(-3) of level three), then L(0), then annihilation modes L(n) by
//! increasing n.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::{Poly, Rational};

/// A Virasoro generator: L(n) or the central element C.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VirMode {
    L(i64),
    Central,
}

/// Sort key realizing the canonical order on modes.
pub fn mode_key(n: i64) -> (u8, i64) {
    match n {
        n if n < 0 => (0, -n),
        0 => (1, 0),
        n => (2, n),
    }
}

/// A canonical word L(n_1)...L(n_k) C^p.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PBWWord {
    modes: Vec<i64>,
    central: u32,
}

impl PBWWord {
    /// Panics if `modes` is not in canonical order.
    pub fn new(modes: Vec<i64>, central: u32) -> Self {
        assert!(is_canonical(&modes), "non-canonical word {modes:?}");
        PBWWord { modes, central }
    }

    pub fn identity() -> Self {
        PBWWord {
            modes: vec![],
            central: 0,
        }
    }

    pub fn modes(&self) -> &[i64] {
        &self.modes
    }

    pub fn central(&self) -> u32 {
        self.central
    }

    /// Degree under L(n) -> -n.
    pub fn degree(&self) -> i64 {
        -self.modes.iter().sum::<i64>()
    }
}

pub fn is_canonical(modes: &[i64]) -> bool {
    modes.windows(2).all(|w| mode_key(w[0]) <= mode_key(w[1]))
}

impl fmt::Display for PBWWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modes.is_empty() && self.central == 0 {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.modes.len() {
            let n = self.modes[i];
            let run = self.modes[i..].iter().take_while(|&&m| m == n).count();
            write!(f, "L({n})")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        match self.central {
            0 => Ok(()),
            1 => f.write_str("C"),
            p => write!(f, "C^{p}"),
        }
    }
}

/// Rational combination of canonical words, keyed by (modes, power of C).
pub(crate) type RawTerms = BTreeMap<(Vec<i64>, u32), Rational>;

fn add_raw(acc: &mut RawTerms, key: (Vec<i64>, u32), c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

/// Memoizing normal-ordering engine. Keeps the products L(x) * w for
/// canonical words w that it has already expanded.
#[derive(Default)]
pub struct Normalizer {
    cache: HashMap<(i64, Vec<i64>), RawTerms>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Normal form of L(x) * w with `w` canonical.
    pub(crate) fn insert(&mut self, x: i64, w: &[i64]) -> RawTerms {
        if w.is_empty() || mode_key(x) <= mode_key(w[0]) {
            let mut modes = Vec::with_capacity(w.len() + 1);
            modes.push(x);
            modes.extend_from_slice(w);
            return RawTerms::from([((modes, 0), Rational::one())]);
        }
        if let Some(hit) = self.cache.get(&(x, w.to_vec())) {
            return hit.clone();
        }
        let u = w[0];
        let rest = &w[1..];
        let mut out = RawTerms::new();
        // L(x) L(u) rest = L(u) (L(x) rest) + [L(x), L(u)] rest
        for ((word, p), c) in self.insert(x, rest) {
            for ((word2, p2), c2) in self.insert(u, &word) {
                add_raw(&mut out, (word2, p + p2), c.clone() * c2);
            }
        }
        if x != u {
            let k = Rational::from_integer((x - u).into());
            for ((word, p), c) in self.insert(x + u, rest) {
                add_raw(&mut out, (word, p), c * k.clone());
            }
        }
        if x + u == 0 {
            let k = central_coefficient(x);
            if !k.is_zero() {
                add_raw(&mut out, (rest.to_vec(), 1), k);
            }
        }
        self.cache.insert((x, w.to_vec()), out.clone());
        out
    }

    /// Normal form of an arbitrary word.
    pub(crate) fn word(&mut self, word: &[VirMode]) -> RawTerms {
        let mut acc = RawTerms::from([((vec![], 0), Rational::one())]);
        for g in word.iter().rev() {
            match *g {
                VirMode::Central => {
                    acc = acc.into_iter().map(|((w, p), c)| ((w, p + 1), c)).collect();
                }
                VirMode::L(x) => {
                    let mut next = RawTerms::new();
                    for ((w, p), c) in acc {
                        for ((w2, p2), c2) in self.insert(x, &w) {
                            add_raw(&mut next, (w2, p + p2), c.clone() * c2);
                        }
                    }
                    acc = next;
                }
            }
        }
        acc
    }
}

/// (m^3 - m) / 12.
pub fn central_coefficient(m: i64) -> Rational {
    Rational::new((m * m * m - m).into(), 12.into())
}

/// Element of U(Vir): canonical words with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UEAElement {
    terms: BTreeMap<PBWWord, Poly>,
}

impl UEAElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The normal-ordered product of the given generators.
    pub fn from_word(word: &[VirMode]) -> Self {
        Self::from_raw(Normalizer::new().word(word), &Poly::one())
    }

    pub(crate) fn from_raw(raw: RawTerms, scale: &Poly) -> Self {
        let mut out = Self::zero();
        for ((modes, p), c) in raw {
            out.add_term(PBWWord { modes, central: p }, scale.scale(&c));
        }
        out
    }

    pub fn add_term(&mut self, w: PBWWord, c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Poly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWWord, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &PBWWord) -> Poly {
        self.terms.get(w).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Poly) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut norm = Normalizer::new();
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let word: Vec<VirMode> = w1
                    .modes
                    .iter()
                    .chain(&w2.modes)
                    .map(|&n| VirMode::L(n))
                    .collect();
                let coeff = c1 * c2;
                for ((modes, p), c) in norm.word(&word) {
                    out.add_term(
                        PBWWord {
                            modes,
                            central: p + w1.central + w2.central,
                        },
                        coeff.scale(&c),
                    );
                }
            }
        }
        out
    }
}

/// Normal-orders a combination of arbitrary (possibly non-canonical) words.
pub fn normal_order<'a>(terms: impl IntoIterator<Item = (&'a [VirMode], Poly)>) -> UEAElement {
    let mut norm = Normalizer::new();
    let mut out = UEAElement::zero();
    for (word, coeff) in terms {
        for ((modes, p), c) in norm.word(word) {
            out.add_term(PBWWord { modes, central: p }, coeff.scale(&c));
        }
    }
    out
}

/// Generator-level commutator [a, b].
pub fn bracket(a: VirMode, b: VirMode) -> UEAElement {
    let (VirMode::L(m), VirMode::L(n)) = (a, b) else {
        return UEAElement::zero();
    };
    let mut out = UEAElement::zero();
    if m != n {
        out.add_term(
            PBWWord::new(vec![m + n], 0),
            Poly::constant(Rational::from_integer((m - n).into())),
        );
    }
    if m + n == 0 {
        out.add_term(
            PBWWord::new(vec![], 1),
            Poly::constant(central_coefficient(m)),
        );
    }
    out
}

/// Anti-automorphism L(n) -> L(-n), C -> C, reversing words.
pub fn transpose(e: &UEAElement) -> UEAElement {
    let words: Vec<(Vec<VirMode>, Poly)> = e
        .terms
        .iter()
        .map(|(w, c)| {
            let mut word: Vec<VirMode> = w.modes.iter().rev().map(|&n| VirMode::L(-n)).collect();
            word.extend(std::iter::repeat_n(VirMode::Central, w.central as usize));
            (word, c.clone())
        })
        .collect();
    normal_order(words.iter().map(|(w, c)| (w.as_slice(), c.clone())))
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.constant_value().is_some_and(|v| v < Rational::zero());
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word = w.to_string();
            let ident = word == "1";
            if mag.is_one() {
                f.write_str(&word)?;
            } else if mag.num_terms() == 1 && mag.is_constant() {
                write!(f, "{mag}")?;
                if !ident {
                    f.write_str(&word)?;
                }
            } else {
                write!(f, "({mag})")?;
                if !ident {
                    f.write_str(&word)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Symbol;
    use proptest::prelude::*;
    use VirMode::*;

    fn q(n: i64, d: i64) -> Poly {
        Poly::constant(Rational::new(n.into(), d.into()))
    }

    fn w(modes: &[i64], p: u32) -> PBWWord {
        PBWWord::new(modes.to_vec(), p)
    }

    #[test]
    fn single_bracket_without_central_term() {
        let e = UEAElement::from_word(&[L(1), L(-1)]);
        let mut want = UEAElement::zero();
        want.add_term(w(&[-1, 1], 0), q(1, 1));
        want.add_term(w(&[0], 0), q(2, 1));
        assert_eq!(e, want);
    }

    #[test]
    fn central_term_at_level_two() {
        let e = UEAElement::from_word(&[L(2), L(-2)]);
        let mut want = UEAElement::zero();
        want.add_term(w(&[-2, 2], 0), q(1, 1));
        want.add_term(w(&[0], 0), q(4, 1));
        want.add_term(w(&[], 1), q(1, 2));
        assert_eq!(e, want);
    }

    #[test]
    fn two_swaps() {
        // worked by hand: L(1)L(-1)L(-1) = L(-1)^2 L(1) + 4 L(-1)L(0) + 2 L(-1)
        let e = UEAElement::from_word(&[L(1), L(-1), L(-1)]);
        let mut want = UEAElement::zero();
        want.add_term(w(&[-1, -1, 1], 0), q(1, 1));
        want.add_term(w(&[-1, 0], 0), q(4, 1));
        want.add_term(w(&[-1], 0), q(2, 1));
        assert_eq!(e, want);
    }

    #[test]
    fn creation_modes_order_by_magnitude() {
        // L(-2)L(-1) = L(-1)L(-2) + [L(-2), L(-1)] = L(-1)L(-2) - L(-3)
        let e = UEAElement::from_word(&[L(-2), L(-1)]);
        let mut want = UEAElement::zero();
        want.add_term(w(&[-1, -2], 0), q(1, 1));
        want.add_term(w(&[-3], 0), q(-1, 1));
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "-L(-3) + L(-1)L(-2)");
    }

    #[test]
    fn brackets() {
        let mut want = UEAElement::zero();
        want.add_term(w(&[0], 0), q(2, 1));
        assert_eq!(bracket(L(1), L(-1)), want);
        want.add_term(w(&[0], 0), q(2, 1));
        want.add_term(w(&[], 1), q(1, 2));
        assert_eq!(bracket(L(2), L(-2)), want);
        assert!(bracket(Central, L(5)).is_zero());
        assert!(bracket(L(3), Central).is_zero());
    }

    #[test]
    fn transpose_examples() {
        let e = UEAElement::from_word(&[L(-1), L(-2)]);
        assert_eq!(transpose(&e), UEAElement::from_word(&[L(2), L(1)]));
        assert_eq!(transpose(&UEAElement::one()), UEAElement::one());
    }

    #[test]
    fn bracket_jacobi_and_antisymmetry() {
        let one = |m| UEAElement::from_word(&[L(m)]);
        let comm = |a: &UEAElement, b: &UEAElement| {
            a.mul(b).add(&b.mul(a).scale(&q(-1, 1)))
        };
        for m in -6..=6 {
            for n in -6..=6 {
                let ab = bracket(L(m), L(n));
                assert_eq!(ab, comm(&one(m), &one(n)));
                assert_eq!(ab.add(&bracket(L(n), L(m))), UEAElement::zero());
                for p in -6..=6 {
                    let j = comm(&comm(&one(m), &one(n)), &one(p))
                        .add(&comm(&comm(&one(n), &one(p)), &one(m)))
                        .add(&comm(&comm(&one(p), &one(m)), &one(n)));
                    assert!(j.is_zero(), "({m},{n},{p})");
                }
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = Vec<VirMode>> {
        proptest::collection::vec(
            prop_oneof![8 => (-3i64..=3).prop_map(L), 1 => Just(Central)],
            0..=3,
        )
    }

    fn arb_element() -> impl Strategy<Value = UEAElement> {
        proptest::collection::vec((arb_word(), -3i64..=3, 0u16..2), 1..3).prop_map(|ts| {
            let terms: Vec<(Vec<VirMode>, Poly)> = ts
                .into_iter()
                .map(|(word, k, e)| {
                    let mut coeff = Poly::var(Symbol::H).pow(e as u32);
                    coeff = coeff.scale(&Rational::from_integer(k.into()));
                    (word, coeff)
                })
                .collect();
            normal_order(terms.iter().map(|(w, c)| (w.as_slice(), c.clone())))
        })
    }

    fn canonical_terms(e: &UEAElement) -> Vec<(Vec<VirMode>, Poly)> {
        e.terms()
            .map(|(w, c)| {
                let mut word: Vec<VirMode> = w.modes().iter().map(|&n| L(n)).collect();
                word.extend(std::iter::repeat_n(Central, w.central() as usize));
                (word, c.clone())
            })
            .collect()
    }

    proptest! {
        #[test]
        fn normal_order_is_idempotent(e in arb_element()) {
            let ts = canonical_terms(&e);
            let again = normal_order(ts.iter().map(|(w, c)| (w.as_slice(), c.clone())));
            prop_assert_eq!(again, e);
        }

        #[test]
        fn normal_order_is_associative(a in arb_word(), b in arb_word()) {
            let whole: Vec<VirMode> = a.iter().chain(&b).copied().collect();
            let direct = UEAElement::from_word(&whole);
            let staged = UEAElement::from_word(&a).mul(&UEAElement::from_word(&b));
            prop_assert_eq!(direct, staged);
        }

        #[test]
        fn normal_order_preserves_degree(a in arb_word()) {
            let deg: i64 = -a.iter().map(|g| match g { L(n) => *n, Central => 0 }).sum::<i64>();
            for (w, _) in UEAElement::from_word(&a).terms() {
                prop_assert_eq!(w.degree(), deg);
            }
        }

        #[test]
        fn transpose_is_an_anti_involution(x in arb_element(), y in arb_element()) {
            prop_assert_eq!(transpose(&transpose(&x)), x.clone());
            prop_assert_eq!(transpose(&x.mul(&y)), transpose(&y).mul(&transpose(&x)));
        }
    }
}
