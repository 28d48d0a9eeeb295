//! Words, their λ-shuffle products, compositions and the binarisation map.

use std::fmt;

use num_traits::Zero;

use crate::decoration::{common_alphabet, merge_alphabets, Alphabet, Bin, Decoration, X, Y};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::tree::Graded;

/// A finite sequence of letters; the empty word is the unit of both concatenation and
/// every λ-shuffle.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Decoration>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<Decoration>) -> Result<Self> {
        common_alphabet(letters.iter().copied())?;
        Ok(Word { letters })
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<Decoration>) -> Self {
        Word { letters }
    }

    /// Word over the positive integers; panics on a zero letter.
    pub fn from_ints(parts: &[u32]) -> Self {
        Word {
            letters: parts.iter().map(|&n| Decoration::int(n)).collect(),
        }
    }

    /// Word over {x, y} from a string such as `"xyy"`.
    pub fn from_xy(text: &str) -> Result<Self> {
        text.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                'x' => Ok(X),
                'y' => Ok(Y),
                other => Err(Error::Parse {
                    pos,
                    msg: format!("expected x or y, found {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(|letters| Word { letters })
    }

    pub fn letters(&self) -> &[Decoration] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Decoration> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Decoration> {
        self.letters.last().copied()
    }

    pub fn alphabet(&self) -> Option<Alphabet> {
        self.first().map(Decoration::alphabet)
    }

    /// `(letter) ⊔ self`.
    pub fn prepend(&self, letter: Decoration) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn suffix(&self, start: usize) -> Word {
        Word {
            letters: self.letters[start..].to_vec(),
        }
    }

    /// Word read backwards with x and y exchanged (the duality involution on {x, y}).
    pub fn dual(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|d| match d {
                    Decoration::Bin(Bin::X) => Y,
                    Decoration::Bin(Bin::Y) => X,
                    other => *other,
                })
                .collect(),
        }
    }
}

impl Graded for Word {
    fn decorations_iter(&self) -> Vec<Decoration> {
        self.letters.clone()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

pub fn concat_words(a: &Word, b: &Word) -> Result<Word> {
    merge_alphabets(a.alphabet(), b.alphabet())?;
    let mut letters = a.letters.clone();
    letters.extend_from_slice(&b.letters);
    Ok(Word { letters })
}

fn check_lambda_letters(letters: &[Decoration], lambda: &Rational) -> Result<()> {
    if !lambda.is_zero() && letters.iter().any(|d| d.alphabet() != Alphabet::PosInt) {
        return Err(Error::SemigroupRequired);
    }
    Ok(())
}

fn prepend_all(letter: Decoration, words: &LinComb<Word>) -> LinComb<Word> {
    words.map_linear(|w| LinComb::basis(w.prepend(letter)))
}

/// λ-shuffle of two words.
///
/// Fills a table of products of suffix pairs, so each pair is expanded once:
/// `(a)u ⧢ (b)v = (a)[u ⧢ (b)v] + (b)[(a)u ⧢ v] + λ(a•b)[u ⧢ v]`.
pub fn shuffle_words(a: &Word, b: &Word, lambda: &Rational) -> Result<LinComb<Word>> {
    merge_alphabets(a.alphabet(), b.alphabet())?;
    check_lambda_letters(&a.letters, lambda)?;
    check_lambda_letters(&b.letters, lambda)?;
    let (n, m) = (a.len(), b.len());
    let width = m + 1;
    let mut table: Vec<LinComb<Word>> = vec![LinComb::zero(); (n + 1) * width];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let cell = if i == n {
                LinComb::basis(b.suffix(j))
            } else if j == m {
                LinComb::basis(a.suffix(i))
            } else {
                let mut acc = prepend_all(a.letters[i], &table[(i + 1) * width + j]);
                acc.add_assign_ref(&prepend_all(b.letters[j], &table[i * width + j + 1]));
                if !lambda.is_zero() {
                    let merged = a.letters[i].combine(b.letters[j])?;
                    acc.add_scaled(lambda, &prepend_all(merged, &table[(i + 1) * width + j + 1]));
                }
                acc
            };
            table[i * width + j] = cell;
        }
    }
    Ok(table.swap_remove(0))
}

/// Bilinear extension of [`shuffle_words`].
pub fn shuffle_lambda_words(
    a: &LinComb<Word>,
    b: &LinComb<Word>,
    lambda: &Rational,
) -> Result<LinComb<Word>> {
    a.try_bilinear(b, |u, v| shuffle_words(u, v, lambda))
}

/// Positive-integer words: empty or first letter ≥ 2. Binary words: empty, or starting
/// with x and ending with y.
pub fn is_convergent_word(w: &Word) -> bool {
    match (w.first(), w.last()) {
        (None, _) => true,
        (Some(Decoration::PosInt(n)), _) => n >= 2,
        (Some(first), Some(last)) if first.alphabet() == Alphabet::Bin => first == X && last == Y,
        _ => false,
    }
}

/// Binary words that are empty or end with y.
pub fn is_semiconvergent_word(w: &Word) -> bool {
    match w.last() {
        None => true,
        Some(last) => last == Y,
    }
}

/// An MZV / polylogarithm index `(s₁, …, s_k)` with every part ≥ 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse {
                pos: 0,
                msg: "composition parts must be positive".into(),
            });
        }
        Ok(Composition(parts))
    }

    /// Panics on a zero part.
    pub fn from_slice(parts: &[u32]) -> Self {
        Composition::new(parts.to_vec()).expect("positive parts")
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_convergent(&self) -> bool {
        self.0.first().is_none_or(|&s| s >= 2)
    }

    pub fn to_word(&self) -> Word {
        Word::from_ints(&self.0)
    }

    /// The inverse of [`Composition::to_word`]; fails on non-integer letters.
    pub fn from_word(w: &Word) -> Result<Self> {
        w.letters()
            .iter()
            .map(|d| {
                d.as_int().ok_or(Error::UnsupportedAlphabet {
                    expected: Alphabet::PosInt.name(),
                    found: d.alphabet().name(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `(n₁, …, n_k) ↦ x^{n₁−1} y ⋯ x^{n_k−1} y`.
pub fn binarise(s: &Composition) -> Word {
    let mut letters = Vec::with_capacity(s.weight() as usize);
    for &n in s.parts() {
        letters.extend(std::iter::repeat_n(X, n as usize - 1));
        letters.push(Y);
    }
    Word { letters }
}

/// Inverse of [`binarise`] on semiconvergent binary words.
pub fn debinarise(w: &Word) -> Result<Composition> {
    if !w.is_empty() && (w.alphabet() != Some(Alphabet::Bin) || w.last() != Some(Y)) {
        return Err(Error::NotSemiconvergent(w.to_string()));
    }
    let mut parts = Vec::new();
    let mut run = 1u32;
    for &letter in w.letters() {
        if letter == X {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    Ok(Composition(parts))
}
