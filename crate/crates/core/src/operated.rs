//! Branched maps `φ̂` from forests into operated commutative algebras, their restriction to
//! words, decoration lifting, and exact Rota-Baxter models for checking factorisation.

use num_traits::{One, Signed, Zero};

use crate::decoration::{Bin, Decoration};
use crate::error::{Error, Result};
use crate::forest_algebra::{Flattener, TreeShuffler};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::tree::{canonicalize, Forest, RawTree, Tree};
use crate::word::Word;

/// A commutative unital algebra over the rationals.
///
/// Implementations must be pure: every method depends on its arguments only.
pub trait CommutativeAlgebra {
    type Elem: Clone + std::fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn zero(&self) -> Self::Elem {
        self.scale(&Rational::zero(), &self.one())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Rational::one(), b))
    }
}

/// An algebra with an embedding of decorations and a linear operator `φ`, yielding the
/// operated structure `(ω, u) ↦ φ(ω·u)`.
pub trait OperatedTarget: CommutativeAlgebra {
    fn embed(&self, d: Decoration) -> Result<Self::Elem>;
    fn operate(&self, a: &Self::Elem) -> Self::Elem;
}

pub fn branch_tree<T: OperatedTarget + ?Sized>(target: &T, tree: &Tree) -> Result<T::Elem> {
    let below = branch_forest(target, &tree.branches())?;
    let w = target.embed(tree.root())?;
    Ok(target.operate(&target.mul(&w, &below)))
}

pub fn branch_forest<T: OperatedTarget + ?Sized>(target: &T, forest: &Forest) -> Result<T::Elem> {
    let mut acc = target.one();
    for t in forest.trees() {
        acc = target.mul(&acc, &branch_tree(target, t)?);
    }
    Ok(acc)
}

/// `φ̂` extended linearly: `φ̂(∅) = 1`, `φ̂(F F′) = φ̂(F) φ̂(F′)`, `φ̂(B₊^ω F) = φ(ω φ̂(F))`.
pub fn branch<T: OperatedTarget + ?Sized>(target: &T, forests: &LinComb<Forest>) -> Result<T::Elem> {
    let mut acc = target.zero();
    for (f, q) in forests.iter() {
        acc = target.add(&acc, &target.scale(q, &branch_forest(target, f)?));
    }
    Ok(acc)
}

pub fn branch_word<T: OperatedTarget + ?Sized>(target: &T, w: &Word) -> Result<T::Elem> {
    let mut acc = target.one();
    for &letter in w.letters().iter().rev() {
        acc = target.operate(&target.mul(&target.embed(letter)?, &acc));
    }
    Ok(acc)
}

/// `φ̂_W((ω)⊔w) = φ(ω φ̂_W(w))`, extended linearly.
pub fn branch_words<T: OperatedTarget + ?Sized>(target: &T, words: &LinComb<Word>) -> Result<T::Elem> {
    let mut acc = target.zero();
    for (w, q) in words.iter() {
        acc = target.add(&acc, &target.scale(q, &branch_word(target, w)?));
    }
    Ok(acc)
}

fn lift_raw(psi: &impl Fn(Decoration) -> Decoration, t: &Tree) -> RawTree {
    RawTree::node(psi(t.root()), t.children().iter().map(|c| lift_raw(psi, c)).collect())
}

/// Relabels every vertex through `ψ`; the shape is kept and the result re-canonicalised.
pub fn lift(psi: impl Fn(Decoration) -> Decoration, forest: &Forest) -> Result<Forest> {
    let trees = forest
        .trees()
        .iter()
        .map(|t| canonicalize(&lift_raw(&psi, t)))
        .collect::<Result<Vec<_>>>()?;
    Forest::new(trees)
}

pub fn lift_lincomb(
    psi: impl Fn(Decoration) -> Decoration,
    forests: &LinComb<Forest>,
) -> Result<LinComb<Forest>> {
    forests.try_map_linear(|f| Ok(LinComb::basis(lift(&psi, f)?)))
}

pub fn lift_word(psi: impl Fn(Decoration) -> Decoration, w: &Word) -> Result<Word> {
    Word::new(w.letters().iter().map(|&d| psi(d)).collect())
}

/// `P(a)P(b) = P(aP(b)) + P(P(a)b) + λP(ab)` on every sample pair.
pub fn check_rota_baxter<T: OperatedTarget + ?Sized>(
    target: &T,
    samples: &[(T::Elem, T::Elem)],
    lambda: &Rational,
) -> bool {
    samples.iter().all(|(a, b)| {
        let (pa, pb) = (target.operate(a), target.operate(b));
        let lhs = target.mul(&pa, &pb);
        let mut rhs = target.operate(&target.mul(a, &pb));
        rhs = target.add(&rhs, &target.operate(&target.mul(&pa, b)));
        rhs = target.add(&rhs, &target.scale(lambda, &target.operate(&target.mul(a, b))));
        target.equal(&lhs, &rhs)
    })
}

/// `P̂(F) == P̂_W(fl_λ(F))`.
pub fn verify_factorization<T: OperatedTarget + ?Sized>(
    target: &T,
    flattener: &mut Flattener,
    forest: &Forest,
) -> Result<bool> {
    let lhs = branch_forest(target, forest)?;
    let rhs = branch_words(target, &flattener.flatten_forest(forest)?)?;
    Ok(target.equal(&lhs, &rhs))
}

/// `P̂(F ⧢_λ F′) == P̂(F) P̂(F′)`.
pub fn verify_tree_shuffle_morphism<T: OperatedTarget + ?Sized>(
    target: &T,
    shuffler: &mut TreeShuffler,
    a: &Forest,
    b: &Forest,
) -> Result<bool> {
    let lhs = branch(target, &shuffler.shuffle_forests(a, b)?)?;
    let rhs = target.mul(&branch_forest(target, a)?, &branch_forest(target, b)?);
    Ok(target.equal(&lhs, &rhs))
}

fn embedding_error(d: Decoration) -> Error {
    Error::Embedding(d.to_string())
}

/// Which cumulative sum a [`TruncSeq`] uses as its operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// `P(a)(n) = Σ_{m<n} a(m)`, weight +1.
    Strict,
    /// `P(a)(n) = Σ_{m≤n} a(m)`, weight −1.
    NonStrict,
}

impl Summation {
    pub fn weight(self) -> Rational {
        match self {
            Summation::Strict => Rational::one(),
            Summation::NonStrict => -Rational::one(),
        }
    }
}

/// Rational sequences on `1..=N` with pointwise product; decoration `n` embeds as
/// `k ↦ k^{−n}`, a semigroup morphism for integer addition.
#[derive(Debug, Clone)]
pub struct TruncSeq {
    horizon: usize,
    summation: Summation,
}

impl TruncSeq {
    pub fn new(horizon: usize, summation: Summation) -> Self {
        assert!(horizon >= 1, "horizon must be positive");
        TruncSeq { horizon, summation }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn summation(&self) -> Summation {
        self.summation
    }

    /// Sequence with values `f(1), …, f(N)`.
    pub fn from_fn(&self, f: impl Fn(usize) -> Rational) -> Vec<Rational> {
        (1..=self.horizon).map(f).collect()
    }
}

impl CommutativeAlgebra for TruncSeq {
    type Elem = Vec<Rational>;

    fn one(&self) -> Vec<Rational> {
        vec![Rational::one(); self.horizon]
    }

    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    fn scale(&self, q: &Rational, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| q * x).collect()
    }

    fn equal(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> bool {
        a == b
    }
}

impl OperatedTarget for TruncSeq {
    fn embed(&self, d: Decoration) -> Result<Vec<Rational>> {
        let n = d.as_int().ok_or_else(|| embedding_error(d))?;
        Ok(self.from_fn(|k| {
            Rational::new(1.into(), num_bigint::BigInt::from(k).pow(n))
        }))
    }

    fn operate(&self, a: &Vec<Rational>) -> Vec<Rational> {
        let mut out = Vec::with_capacity(a.len());
        let mut acc = Rational::zero();
        for x in a {
            match self.summation {
                Summation::Strict => {
                    out.push(acc.clone());
                    acc += x;
                }
                Summation::NonStrict => {
                    acc += x;
                    out.push(acc.clone());
                }
            }
        }
        out
    }
}

/// Rational polynomials in one variable `t` (coefficient of `t^i` at index `i`) with
/// integration from 0, a Rota-Baxter operator of weight 0.
///
/// Decoration `n` embeds as `1 + n·t`, `x` as `1 + t`, `y` as `1 − t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyQ;

impl PolyQ {
    pub fn monomial(degree: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); degree + 1];
        c[degree] = Rational::one();
        c
    }

    fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    }

    pub fn evaluate(c: &[Rational], t: &Rational) -> Rational {
        c.iter().rev().fold(Rational::zero(), |acc, a| acc * t + a)
    }
}

impl CommutativeAlgebra for PolyQ {
    type Elem = Vec<Rational>;

    fn one(&self) -> Vec<Rational> {
        vec![Rational::one()]
    }

    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        Self::trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::trim(out)
    }

    fn scale(&self, q: &Rational, a: &Vec<Rational>) -> Vec<Rational> {
        Self::trim(a.iter().map(|x| q * x).collect())
    }

    fn equal(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> bool {
        Self::trim(a.clone()) == Self::trim(b.clone())
    }
}

impl OperatedTarget for PolyQ {
    fn embed(&self, d: Decoration) -> Result<Vec<Rational>> {
        let slope = match d {
            Decoration::PosInt(n) => Rational::from_integer(n.into()),
            Decoration::Bin(Bin::X) => Rational::one(),
            Decoration::Bin(Bin::Y) => -Rational::one(),
            Decoration::Generic(_) => return Err(embedding_error(d)),
        };
        Ok(vec![Rational::one(), slope])
    }

    fn operate(&self, a: &Vec<Rational>) -> Vec<Rational> {
        let mut out = vec![Rational::zero()];
        out.extend(
            a.iter()
                .enumerate()
                .map(|(i, x)| x / Rational::from_integer((i as i64 + 1).into())),
        );
        Self::trim(out)
    }
}

/// `P + c·1`: an affine perturbation that breaks the Rota-Baxter identity.
#[derive(Debug, Clone)]
pub struct Perturbed<T> {
    pub inner: T,
    pub shift: Rational,
}

impl<T: CommutativeAlgebra> CommutativeAlgebra for Perturbed<T> {
    type Elem = T::Elem;

    fn one(&self) -> T::Elem {
        self.inner.one()
    }

    fn add(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.inner.add(a, b)
    }

    fn mul(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        self.inner.mul(a, b)
    }

    fn scale(&self, q: &Rational, a: &T::Elem) -> T::Elem {
        self.inner.scale(q, a)
    }

    fn equal(&self, a: &T::Elem, b: &T::Elem) -> bool {
        self.inner.equal(a, b)
    }
}

impl<T: OperatedTarget> OperatedTarget for Perturbed<T> {
    fn embed(&self, d: Decoration) -> Result<T::Elem> {
        self.inner.embed(d)
    }

    fn operate(&self, a: &T::Elem) -> T::Elem {
        let shifted = self.inner.scale(&self.shift, &self.inner.one());
        self.inner.add(&self.inner.operate(a), &shifted)
    }
}

/// Floating-point sequences on `1..=N`; the operator is a cumulative sum with
/// Neumaier compensation. Used for direct nested-sum evaluation.
#[derive(Debug, Clone)]
pub struct SeqF64 {
    horizon: usize,
    summation: Summation,
}

impl SeqF64 {
    pub fn new(horizon: usize, summation: Summation) -> Self {
        assert!(horizon >= 1, "horizon must be positive");
        SeqF64 { horizon, summation }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

impl CommutativeAlgebra for SeqF64 {
    type Elem = Vec<f64>;

    fn one(&self) -> Vec<f64> {
        vec![1.0; self.horizon]
    }

    fn add(&self, a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul(&self, a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    fn scale(&self, q: &Rational, a: &Vec<f64>) -> Vec<f64> {
        let q = crate::rational::to_f64(q);
        a.iter().map(|x| q * x).collect()
    }

    fn equal(&self, a: &Vec<f64>, b: &Vec<f64>) -> bool {
        a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0))
    }
}

impl OperatedTarget for SeqF64 {
    fn embed(&self, d: Decoration) -> Result<Vec<f64>> {
        let n = d.as_int().ok_or_else(|| embedding_error(d))? as i32;
        Ok((1..=self.horizon).map(|k| (k as f64).powi(-n)).collect())
    }

    fn operate(&self, a: &Vec<f64>) -> Vec<f64> {
        let mut out = Vec::with_capacity(a.len());
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for &x in a {
            if self.summation == Summation::Strict {
                out.push(sum + comp);
            }
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            if self.summation == Summation::NonStrict {
                out.push(sum + comp);
            }
        }
        out
    }
}

/// Largest absolute entry difference, for reporting model residuals.
pub fn max_abs_difference(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(Rational::zero(), |m, d| if d > m { d } else { m })
}
