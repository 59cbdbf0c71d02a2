use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{wlog_bracket, Cocycle, WLogGenerator};
use crate::error::{Error, Result};
use crate::{Poly, Rational, Symbol};

/// Which generators annihilate the vacuum v_b.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarization {
    /// W^- = {i < 0} creates; W^0 and W^+ annihilate.
    LogIndex,
    /// Negative modes create; modes >= 0 annihilate.
    ModeSign,
}

impl Polarization {
    fn annihilates(self, g: WLogGenerator) -> bool {
        match (self, g) {
            (_, WLogGenerator::B) => false,
            (Polarization::LogIndex, WLogGenerator::T(t)) => t.log >= 0,
            (Polarization::ModeSign, WLogGenerator::T(t)) => t.mode >= 0,
        }
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" | "log-index" => Ok(Polarization::LogIndex),
            "mode" | "mode-sign" => Ok(Polarization::ModeSign),
            _ => Err(Error::Parse(format!("unknown polarization {s:?}"))),
        }
    }
}

/// A word in the enveloping algebra, leftmost factor first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WLogWord {
    pub factors: Vec<WLogGenerator>,
}

impl WLogWord {
    pub fn new(factors: Vec<WLogGenerator>) -> Self {
        WLogWord { factors }
    }

    /// θ on a word: factors reversed, each mapped to (-1)^i t^{(i)}(-m).
    /// Returns the accumulated sign with the image word.
    pub fn theta(&self) -> (Rational, WLogWord) {
        let mut sign = Rational::one();
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|g| match *g {
                WLogGenerator::B => WLogGenerator::B,
                WLogGenerator::T(t) => {
                    if t.log.rem_euclid(2) == 1 {
                        sign = -sign.clone();
                    }
                    WLogGenerator::t(t.log, -t.mode)
                }
            })
            .collect();
        (sign, WLogWord { factors })
    }

    pub fn concat(&self, o: &WLogWord) -> WLogWord {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().copied());
        WLogWord { factors: f }
    }
}

impl fmt::Display for WLogWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Space-separated generators, e.g. `t(-1,2) t(0,-2)`; `1` is the empty word.
impl FromStr for WLogWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(WLogWord::default());
        }
        // allow "t(i, m)" with inner spaces
        let mut factors = vec![];
        let mut cur = String::new();
        let mut depth = 0;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch.is_whitespace() || ch == '*') && depth == 0 {
                if !cur.is_empty() {
                    factors.push(cur.parse()?);
                    cur.clear();
                }
            } else {
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            factors.push(cur.parse()?);
        }
        Ok(WLogWord { factors })
    }
}

struct Vev {
    cocycle: Cocycle,
    pol: Polarization,
    memo: HashMap<Vec<WLogGenerator>, Poly>,
}

impl Vev {
    fn eval(&mut self, word: &[WLogGenerator]) -> Result<Poly> {
        if word.is_empty() {
            return Ok(Poly::one());
        }
        if let Some(p) = word.iter().position(|g| *g == WLogGenerator::B) {
            let mut rest = word.to_vec();
            rest.remove(p);
            return Ok(self.eval(&rest)? * Poly::var(Symbol::B));
        }
        if let Some(v) = self.memo.get(word) {
            return Ok(v.clone());
        }
        let value = self.reduce(word)?;
        self.memo.insert(word.to_vec(), value.clone());
        Ok(value)
    }

    fn reduce(&mut self, word: &[WLogGenerator]) -> Result<Poly> {
        let pol = self.pol;
        if pol.annihilates(*word.last().expect("nonempty")) {
            return Ok(Poly::zero());
        }
        // Move the rightmost annihilator right; with creators only, sort them
        // into PBW order, since their brackets still carry central terms.
        let p = match word.iter().rposition(|&g| pol.annihilates(g)) {
            Some(p) => p,
            None => match word.windows(2).position(|w| w[0] > w[1]) {
                Some(p) => p,
                // ordered creator monomial: no component along v_b
                None => return Ok(Poly::zero()),
            },
        };
        // g c = c g + [g, c]
        let (g, c) = (word[p], word[p + 1]);
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        let mut total = self.eval(&swapped)?;
        let br = wlog_bracket(g, c, self.cocycle)?;
        let (head, tail) = (&word[..p], &word[p + 2..]);
        for (h, k) in br.terms() {
            let mut w = head.to_vec();
            w.push(WLogGenerator::T(*h));
            w.extend_from_slice(tail);
            total += self.eval(&w)? * k;
        }
        if !br.central_coeff().is_zero() {
            let mut w = head.to_vec();
            w.extend_from_slice(tail);
            total += self.eval(&w)? * br.central_coeff();
        }
        Ok(total)
    }
}

/// Coefficient of v_b in word·v_b inside V(b,0), after moving annihilators
/// to the right through the bracket.
pub fn vacuum_expectation(word: &WLogWord, cocycle: Cocycle, pol: Polarization) -> Result<Poly> {
    Vev {
        cocycle,
        pol,
        memo: HashMap::new(),
    }
    .eval(&word.factors)
}

/// ⟨left', right⟩ = vev(θ(left) · right).
pub fn pairing(
    left: &WLogWord,
    right: &WLogWord,
    cocycle: Cocycle,
    pol: Polarization,
) -> Result<Poly> {
    let (sign, image) = left.theta();
    Ok(vacuum_expectation(&image.concat(right), cocycle, pol)?.scale(&sign))
}
