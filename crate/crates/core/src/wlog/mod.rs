//! The logarithmic Witt algebra W_log with basis t^{(i)}(m),
//!
//!   [t^{(i)}(m), t^{(j)}(n)] = (m-n) t^{(i+j)}(m+n) + (j-i) t^{(i+j-1)}(m+n),
//!
//! its central extension by b, the anti-involution
//! θ: t^{(i)}(m) -> (-1)^i t^{(i)}(-m), and vacuum expectations in V(b,0).
//!
//! Generators are realized as vector fields t^{(i)}(m) = t^i e^{-mt} d/dt,
//! which gives the residue (Gelfand-Fuchs) cocycle (1/12) Res_t f''' g.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Poly, Rational, Symbol};

mod checks;
mod cocycle;
mod vev;

pub use checks::{
    check_jacobi, deviations_report, generation_check, Deviation, GenerationReport, JacobiReport,
};
pub use cocycle::{cocycle, cocycle_closed_form, cocycle_residue, LaurentField};
pub use vev::{pairing, vacuum_expectation, Polarization, WLogWord};

/// t^{(log)}(mode).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Gen {
    pub log: i64,
    pub mode: i64,
}

impl Gen {
    pub fn new(log: i64, mode: i64) -> Self {
        Gen { log, mode }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})", self.log, self.mode)
    }
}

/// A basis element of the extended algebra: t^{(i)}(m) or the central b.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum WLogGenerator {
    T(Gen),
    B,
}

impl WLogGenerator {
    pub fn t(log: i64, mode: i64) -> Self {
        WLogGenerator::T(Gen::new(log, mode))
    }
}

impl fmt::Display for WLogGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WLogGenerator::T(g) => g.fmt(f),
            WLogGenerator::B => f.write_str("b"),
        }
    }
}

/// Parses `t(i,m)` or `b`.
impl FromStr for WLogGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "b" {
            return Ok(WLogGenerator::B);
        }
        let bad = || Error::Parse(format!("expected t(i,m) or b, got {s:?}"));
        let body = s
            .strip_prefix("t(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (i, m) = body.split_once(',').ok_or_else(bad)?;
        Ok(WLogGenerator::t(
            i.parse().map_err(|_| bad())?,
            m.parse().map_err(|_| bad())?,
        ))
    }
}

/// Which central term, if any, the bracket carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cocycle {
    None,
    Closed,
    Residue,
}

impl FromStr for Cocycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Cocycle::None),
            "closed" => Ok(Cocycle::Closed),
            "residue" => Ok(Cocycle::Residue),
            _ => Err(Error::Parse(format!("unknown cocycle {s:?}"))),
        }
    }
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cocycle::None => "none",
            Cocycle::Closed => "closed",
            Cocycle::Residue => "residue",
        })
    }
}

/// Finite combination of generators plus a multiple of b.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WLogElement {
    terms: BTreeMap<Gen, Poly>,
    central: Poly,
}

impl WLogElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen) -> Self {
        let mut e = Self::zero();
        e.add_term(g, Poly::one());
        e
    }

    pub fn from_generator(g: WLogGenerator) -> Self {
        match g {
            WLogGenerator::T(g) => Self::gen(g),
            WLogGenerator::B => Self::central(Poly::one()),
        }
    }

    pub fn central(c: Poly) -> Self {
        WLogElement {
            terms: BTreeMap::new(),
            central: c,
        }
    }

    pub fn add_term(&mut self, g: Gen, c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Poly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_central(&mut self, c: Poly) {
        self.central += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gen, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Gen) -> Poly {
        self.terms.get(g).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn central_coeff(&self) -> &Poly {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &o.terms {
            out.add_term(*g, c.clone());
        }
        out.central += o.central.clone();
        out
    }

    pub fn scale(&self, k: &Poly) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, c * k);
        }
        out.central = &self.central * k;
        out
    }

    /// Drops the central part.
    pub fn uncentered(&self) -> Self {
        WLogElement {
            terms: self.terms.clone(),
            central: Poly::zero(),
        }
    }
}

impl fmt::Display for WLogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if c.is_one() {
                    g.to_string()
                } else {
                    format!("({c}){g}")
                }
            })
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})b", self.central));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

fn int(n: i64) -> Poly {
    Poly::from_i64(n)
}

/// Bracket of two generators without central term.
pub fn witt_bracket(a: Gen, b: Gen) -> WLogElement {
    let mut out = WLogElement::zero();
    let m = a.mode + b.mode;
    out.add_term(Gen::new(a.log + b.log, m), int(a.mode - b.mode));
    out.add_term(Gen::new(a.log + b.log - 1, m), int(b.log - a.log));
    out
}

/// Bracket in the extended algebra; the central term is the chosen cocycle
/// times the symbol b.
pub fn wlog_bracket(a: WLogGenerator, b: WLogGenerator, mode: Cocycle) -> Result<WLogElement> {
    let (WLogGenerator::T(x), WLogGenerator::T(y)) = (a, b) else {
        return Ok(WLogElement::zero());
    };
    let mut out = witt_bracket(x, y);
    let c = cocycle(x, y, mode)?;
    out.add_central(Poly::var(Symbol::B).scale(&c));
    Ok(out)
}

/// Bilinear extension of the bracket to elements.
pub fn bracket_elements(a: &WLogElement, b: &WLogElement, mode: Cocycle) -> Result<WLogElement> {
    let mut out = WLogElement::zero();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let e = wlog_bracket(WLogGenerator::T(*x), WLogGenerator::T(*y), mode)?;
            out = out.add(&e.scale(&(cx * cy)));
        }
    }
    Ok(out)
}

/// θ(t^{(i)}(m)) = (-1)^i t^{(i)}(-m); b is fixed.
pub fn antiinvolution(e: &WLogElement) -> WLogElement {
    let mut out = WLogElement::central(e.central.clone());
    for (g, c) in &e.terms {
        let sign = if g.log.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(Gen::new(g.log, -g.mode), c.scale(&Rational::from_integer(sign.into())));
    }
    out
}
