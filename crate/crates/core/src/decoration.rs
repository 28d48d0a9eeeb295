use std::fmt;

use crate::error::{Error, Result};

/// Letter of the binary alphabet {x, y}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bin {
    X,
    Y,
}

/// A vertex label or a word letter.
///
/// The derived order compares the alphabet first (positive integers, then {x, y}, then
/// opaque test tokens) and the value second; every canonical form in the crate relies on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    PosInt(u32),
    Bin(Bin),
    Generic(u32),
}

/// Which alphabet a decoration is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    PosInt,
    Bin,
    Generic,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::PosInt => "positive-integer",
            Alphabet::Bin => "{x,y}",
            Alphabet::Generic => "generic",
        }
    }
}

pub const X: Decoration = Decoration::Bin(Bin::X);
pub const Y: Decoration = Decoration::Bin(Bin::Y);

impl Decoration {
    /// Positive integer decoration; panics on zero.
    pub fn int(n: u32) -> Self {
        assert!(n >= 1, "positive integer decorations start at 1");
        Decoration::PosInt(n)
    }

    pub fn try_int(n: u32) -> Result<Self> {
        if n == 0 {
            Err(Error::Parse {
                pos: 0,
                msg: "decoration must be a positive integer".into(),
            })
        } else {
            Ok(Decoration::PosInt(n))
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            Decoration::PosInt(_) => Alphabet::PosInt,
            Decoration::Bin(_) => Alphabet::Bin,
            Decoration::Generic(_) => Alphabet::Generic,
        }
    }

    pub fn as_int(self) -> Option<u32> {
        match self {
            Decoration::PosInt(n) => Some(n),
            _ => None,
        }
    }

    /// The semigroup product of the positive integers (addition).
    pub fn combine(self, other: Self) -> Result<Self> {
        match (self, other) {
            (Decoration::PosInt(a), Decoration::PosInt(b)) => Ok(Decoration::PosInt(a + b)),
            _ => Err(Error::SemigroupRequired),
        }
    }
}

/// Checks that all decorations share one alphabet and returns it (`None` when empty).
pub fn common_alphabet<I>(decorations: I) -> Result<Option<Alphabet>>
where
    I: IntoIterator<Item = Decoration>,
{
    let mut seen: Option<Alphabet> = None;
    for d in decorations {
        let a = d.alphabet();
        match seen {
            None => seen = Some(a),
            Some(s) if s != a => return Err(Error::AlphabetMismatch(s.name(), a.name())),
            _ => {}
        }
    }
    Ok(seen)
}

pub fn merge_alphabets(a: Option<Alphabet>, b: Option<Alphabet>) -> Result<Option<Alphabet>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::AlphabetMismatch(x.name(), y.name())),
        (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoration::PosInt(n) => write!(f, "{n}"),
            Decoration::Bin(Bin::X) => f.write_str("x"),
            Decoration::Bin(Bin::Y) => f.write_str("y"),
            Decoration::Generic(id) => write!(f, "g{id}"),
        }
    }
}
