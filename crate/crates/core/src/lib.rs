//! Decorated rooted forests, their λ-shuffle algebras and the arborified zeta values
//! they index.
//!
//! Forests reduce to words by flattening, words to compositions by debinarisation, and
//! compositions to numbers through the multiple zeta value and polylogarithm evaluators.

pub mod decoration;
pub mod enumerate;
pub mod error;
pub mod forest_algebra;
pub mod json;
pub mod lincomb;
pub mod operated;
pub mod rational;
pub mod syntax;
pub mod tree;
pub mod word;
pub mod zeta;

pub use decoration::{Alphabet, Bin, Decoration, X, Y};
pub use error::{Error, Result};
pub use forest_algebra::{
    associator_trees, binarise_forest, binarise_tree, debinarise_forest, debinarise_tree,
    flatten, is_convergent_forest, shuffle_lambda_trees, ConvergenceClass, Flattener,
    TreeShuffler,
};
pub use lincomb::LinComb;
pub use rational::Rational;
pub use tree::{b_plus, canonicalize, concat_forests, Forest, Graded, Gradings, RawTree, Tree};
pub use word::{
    binarise, concat_words, debinarise, is_convergent_word, is_semiconvergent_word,
    shuffle_lambda_words, shuffle_words, Composition, Word,
};
