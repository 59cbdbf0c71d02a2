use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Number of symbols in the global registry.
pub const NSYM: usize = 12;

/// The fixed symbol registry. Declaration order is the variable order used by
/// the graded-lexicographic term order and by serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    C,
    H,
    H1,
    H2,
    H3,
    T,
    B,
    Lambda,
    Mu,
    Beta,
    S,
    X,
}

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::C,
        Symbol::H,
        Symbol::H1,
        Symbol::H2,
        Symbol::H3,
        Symbol::T,
        Symbol::B,
        Symbol::Lambda,
        Symbol::Mu,
        Symbol::Beta,
        Symbol::S,
        Symbol::X,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::C => "c",
            Symbol::H => "h",
            Symbol::H1 => "h1",
            Symbol::H2 => "h2",
            Symbol::H3 => "h3",
            Symbol::T => "t",
            Symbol::B => "b",
            Symbol::Lambda => "λ",
            Symbol::Mu => "μ",
            Symbol::Beta => "β",
            Symbol::S => "s",
            Symbol::X => "x",
        }
    }

    /// Accepted spellings, longest first so greedy matching picks `h1` over `h`.
    pub(crate) fn spellings() -> &'static [(&'static str, Symbol)] {
        &[
            ("lambda", Symbol::Lambda),
            ("beta", Symbol::Beta),
            ("mu", Symbol::Mu),
            ("h1", Symbol::H1),
            ("h2", Symbol::H2),
            ("h3", Symbol::H3),
            ("λ", Symbol::Lambda),
            ("μ", Symbol::Mu),
            ("β", Symbol::Beta),
            ("c", Symbol::C),
            ("h", Symbol::H),
            ("t", Symbol::T),
            ("b", Symbol::B),
            ("s", Symbol::S),
            ("x", Symbol::X),
        ]
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Symbol::spellings()
            .iter()
            .find(|(name, _)| *name == s)
            .map(|&(_, sym)| sym)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}
