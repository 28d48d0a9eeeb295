//! Finite formal linear combinations with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::decoration::merge_alphabets;
use crate::error::Result;
use crate::rational::{is_integral, Rational};
use crate::tree::Forest;

/// A finite sum `Σ c_b · b` over canonical basis elements `b`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// linear combinations. The zero combination is distinct from the basis element
/// for the empty forest (or empty word).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(Rational::one(), b)
    }

    pub fn term(coeff: Rational, b: B) -> Self {
        let mut out = Self::zero();
        out.add_term(coeff, b);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, B)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (c, b) in terms {
            out.add_term(c, b);
        }
        out
    }

    /// Adds `coeff · b` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, coeff: Rational, b: B) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, coeff: &Rational, other: &LinComb<B>) {
        if coeff.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(coeff * c, b.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &LinComb<B>) {
        for (b, c) in &other.terms {
            self.add_term(c.clone(), b.clone());
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c * q))
                .collect(),
        }
    }

    pub fn coefficient(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    /// Sum of the coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Linear extension of a map on basis elements.
    pub fn map_linear<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(c, &f(b));
        }
        out
    }

    pub fn try_map_linear<C, F>(&self, mut f: F) -> Result<LinComb<C>>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> Result<LinComb<C>>,
    {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(c, &f(b)?);
        }
        Ok(out)
    }

    /// Bilinear extension of a product on basis elements.
    pub fn try_bilinear<C, F>(&self, other: &LinComb<B>, mut f: F) -> Result<LinComb<C>>
    where
        C: Ord + Clone,
        F: FnMut(&B, &B) -> Result<LinComb<C>>,
    {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&(ca * cb), &f(a, b)?);
            }
        }
        Ok(out)
    }
}

impl LinComb<Forest> {
    /// Bilinear extension of forest concatenation.
    pub fn mul(&self, other: &LinComb<Forest>) -> Result<LinComb<Forest>> {
        self.try_bilinear(other, |a, b| {
            merge_alphabets(a.alphabet(), b.alphabet())?;
            Ok(LinComb::basis(a.concat_unchecked(b)))
        })
    }

    pub fn unit() -> Self {
        LinComb::basis(Forest::empty())
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        for (b, c) in rhs.terms {
            self.add_term(c, b);
        }
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        for (b, c) in rhs.terms {
            self.add_term(-c, b);
        }
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        LinComb {
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<B: Ord + Clone> From<B> for LinComb<B> {
    fn from(b: B) -> Self {
        LinComb::basis(b)
    }
}
