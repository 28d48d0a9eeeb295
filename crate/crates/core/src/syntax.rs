//! Text grammar for trees, forests, words and linear combinations of either.
//!
//! ```text
//! tree       := decoration [ '[' forest ']' ]
//! forest     := tree { ',' tree } | '{}' | ε      (top level: whitespace also separates)
//! decoration := positive integer | 'x' | 'y' | 'g' integer
//! word       := '(' [ decoration { ',' decoration } ] ')' | '"' { 'x' | 'y' } '"'
//! lincomb    := '0' | [ '-' ] term { ('+' | '-') term }
//! term       := [ rational '*' ] ( forest | word )
//! ```

use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::decoration::{common_alphabet, Decoration, X, Y};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{self, Rational};
use crate::tree::{canonicalize, Forest, RawTree, Tree};
use crate::word::{Composition, Word};

/// A parsed linear combination, over forests or over words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Forests(LinComb<Forest>),
    Words(LinComb<Word>),
}

enum Basis {
    Forest(Forest),
    Word(Word),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn decoration(&mut self) -> Result<Decoration> {
        let start = self.pos;
        if self.eat(b'x') {
            return Ok(X);
        }
        if self.eat(b'y') {
            return Ok(Y);
        }
        if self.eat(b'g') {
            return match self.digits().and_then(|t| t.parse::<u32>().ok()) {
                Some(id) => Ok(Decoration::Generic(id)),
                None => self.error("expected a token id after 'g'"),
            };
        }
        match self.digits() {
            Some(text) => match text.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(Decoration::int(n)),
                _ => {
                    self.pos = start;
                    self.error(format!("decoration must be a positive integer, got {text}"))
                }
            },
            None => self.error("expected a decoration (positive integer, x, y or g<id>)"),
        }
    }

    fn tree(&mut self) -> Result<RawTree> {
        let root = self.decoration()?;
        self.skip_ws();
        let mut children = Vec::new();
        if self.eat(b'[') {
            self.skip_ws();
            if !self.eat(b']') {
                loop {
                    self.skip_ws();
                    children.push(self.tree()?);
                    self.skip_ws();
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
        }
        Ok(RawTree::node(root, children))
    }

    fn starts_tree(&self) -> bool {
        self.peek()
            .is_some_and(|c| c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'g')
    }

    fn forest(&mut self) -> Result<Forest> {
        let start = self.pos;
        if self.eat(b'{') {
            self.skip_ws();
            self.expect(b'}')?;
            return Ok(Forest::empty());
        }
        let mut trees = Vec::new();
        loop {
            self.skip_ws();
            if !self.starts_tree() {
                break;
            }
            trees.push(canonicalize(&self.tree()?)?);
            self.skip_ws();
            self.eat(b',');
        }
        Forest::new(trees).map_err(|e| match e {
            Error::AlphabetMismatch(..) => Error::Parse {
                pos: start,
                msg: e.to_string(),
            },
            other => other,
        })
    }

    fn word(&mut self) -> Result<Word> {
        let start = self.pos;
        let word = if self.eat(b'"') {
            let body_start = self.pos;
            while self.peek().is_some_and(|c| c != b'"') {
                self.pos += 1;
            }
            let body = std::str::from_utf8(&self.src[body_start..self.pos]).unwrap();
            self.expect(b'"')?;
            Word::from_xy(body)
        } else {
            self.expect(b'(')?;
            let mut letters = Vec::new();
            self.skip_ws();
            if !self.eat(b')') {
                loop {
                    self.skip_ws();
                    letters.push(self.decoration()?);
                    self.skip_ws();
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            Word::new(letters)
        };
        word.map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }

    fn coefficient(&mut self) -> Result<Option<Rational>> {
        let save = self.pos;
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let mut text = num.to_string();
        if self.eat(b'/') {
            match self.digits() {
                Some(den) => {
                    text.push('/');
                    text.push_str(den);
                }
                None => return self.error("expected a denominator"),
            }
        }
        self.skip_ws();
        if self.eat(b'*') {
            rational::parse(&text).map(Some).map_err(|e| Error::Parse {
                pos: save,
                msg: e.to_string(),
            })
        } else {
            self.pos = save;
            Ok(None)
        }
    }

    fn basis(&mut self) -> Result<Basis> {
        match self.peek() {
            Some(b'(') | Some(b'"') => Ok(Basis::Word(self.word()?)),
            _ => Ok(Basis::Forest(self.forest()?)),
        }
    }

    fn lincomb(&mut self) -> Result<Vec<(Rational, Basis)>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = self.eat(b'-');
        loop {
            self.skip_ws();
            let coeff = self.coefficient()?.unwrap_or_else(Rational::one);
            self.skip_ws();
            let basis = self.basis()?;
            terms.push((if negative { -coeff } else { coeff }, basis));
            self.skip_ws();
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if !self.at_end() {
            return self.error(format!("unexpected character '{}'", self.peek().unwrap() as char));
        }
        Ok(terms)
    }
}

/// Parses a linear combination; all terms must be forests or all words, over one alphabet.
pub fn parse_expr(text: &str) -> Result<Expr> {
    if text.trim() == "0" {
        return Ok(Expr::Forests(LinComb::zero()));
    }
    let mut p = Parser::new(text);
    let terms = p.lincomb()?;
    let mismatch = |msg: &str| Error::Parse {
        pos: 0,
        msg: msg.to_string(),
    };
    if terms.iter().all(|(_, b)| matches!(b, Basis::Forest(_))) {
        let forests: Vec<(Rational, Forest)> = terms
            .into_iter()
            .map(|(c, b)| match b {
                Basis::Forest(f) => (c, f),
                Basis::Word(_) => unreachable!(),
            })
            .collect();
        common_alphabet(forests.iter().flat_map(|(_, f)| f.decorations()))
            .map_err(|e| mismatch(&e.to_string()))?;
        Ok(Expr::Forests(LinComb::from_terms(forests)))
    } else if terms.iter().all(|(_, b)| matches!(b, Basis::Word(_))) {
        let words: Vec<(Rational, Word)> = terms
            .into_iter()
            .map(|(c, b)| match b {
                Basis::Word(w) => (c, w),
                Basis::Forest(_) => unreachable!(),
            })
            .collect();
        common_alphabet(words.iter().flat_map(|(_, w)| w.letters().to_vec()))
            .map_err(|e| mismatch(&e.to_string()))?;
        Ok(Expr::Words(LinComb::from_terms(words)))
    } else {
        Err(mismatch("cannot mix forests and words in one combination"))
    }
}

pub fn parse_forest_lincomb(text: &str) -> Result<LinComb<Forest>> {
    match parse_expr(text)? {
        Expr::Forests(f) => Ok(f),
        Expr::Words(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected forests, found words".into(),
        }),
    }
}

pub fn parse_word_lincomb(text: &str) -> Result<LinComb<Word>> {
    match parse_expr(text)? {
        Expr::Words(w) => Ok(w),
        Expr::Forests(f) if f.is_zero() => Ok(LinComb::zero()),
        Expr::Forests(f) if f.len() == 1 && f.basis_elements().all(Forest::is_empty) => {
            Ok(LinComb::from_terms(f.iter().map(|(_, c)| (c.clone(), Word::empty()))))
        }
        Expr::Forests(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected words, found forests".into(),
        }),
    }
}

pub fn parse_forest(text: &str) -> Result<Forest> {
    let mut p = Parser::new(text);
    let f = p.forest()?;
    p.skip_ws();
    if !p.at_end() {
        return p.error("trailing input after forest");
    }
    Ok(f)
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    let f = parse_forest(text)?;
    match f.as_tree() {
        Some(t) => Ok(t.clone()),
        None => Err(Error::Parse {
            pos: 0,
            msg: format!("expected exactly one tree, found {}", f.tree_count()),
        }),
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let w = p.word()?;
    p.skip_ws();
    if !p.at_end() {
        return p.error("trailing input after word");
    }
    Ok(w)
}

fn write_tree(out: &mut String, t: &Tree) {
    write!(out, "{}", t.root()).unwrap();
    if !t.children().is_empty() {
        out.push('[');
        for (i, c) in t.children().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_tree(out, c);
        }
        out.push(']');
    }
}

pub fn format_tree(t: &Tree) -> String {
    let mut out = String::new();
    write_tree(&mut out, t);
    out
}

/// Top-level trees separated by spaces; the empty forest prints as `{}`.
pub fn format_forest(f: &Forest) -> String {
    if f.is_empty() {
        return "{}".into();
    }
    f.trees().iter().map(format_tree).collect::<Vec<_>>().join(" ")
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

/// Generic printer: `c*b` terms joined by ` + ` / ` - `, unit coefficients omitted.
pub fn format_lincomb_with<B: Ord + Clone>(c: &LinComb<B>, basis: impl Fn(&B) -> String) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (b, q)) in c.iter().enumerate() {
        let magnitude = q.abs();
        if i == 0 {
            if q.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if q.is_negative() { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&rational::format(&magnitude));
            out.push('*');
        }
        out.push_str(&basis(b));
    }
    out
}

pub fn format_forest_lincomb(c: &LinComb<Forest>) -> String {
    format_lincomb_with(c, format_forest)
}

pub fn format_word_lincomb(c: &LinComb<Word>) -> String {
    format_lincomb_with(c, format_word)
}

/// MZV combinations print as `2*z(2,2) + z(4)`; the empty composition prints as `1`.
pub fn format_zeta_lincomb(c: &LinComb<Composition>, star: bool) -> String {
    let head = if star { "zs" } else { "z" };
    if c.len() == 1 {
        if let Some((s, q)) = c.iter().next() {
            if s.is_empty() {
                return rational::format(q);
            }
        }
    }
    format_lincomb_with(c, |s| {
        if s.is_empty() {
            "1".into()
        } else {
            format!("{head}{s}")
        }
    })
}

impl Expr {
    pub fn is_zero(&self) -> bool {
        match self {
            Expr::Forests(f) => f.is_zero(),
            Expr::Words(w) => w.is_zero(),
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Forests(c) => f.write_str(&format_forest_lincomb(c)),
            Expr::Words(c) => f.write_str(&format_word_lincomb(c)),
        }
    }
}
