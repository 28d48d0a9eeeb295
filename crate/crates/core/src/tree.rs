//! Decorated rooted trees and forests in canonical (sorted multiset) form.

use std::collections::BTreeMap;

use crate::decoration::{common_alphabet, merge_alphabets, Alphabet, Decoration};
use crate::error::{Error, Result};
use crate::word::Word;

/// A nonempty decorated rooted tree.
///
/// Children are kept sorted, so two trees are equal exactly when they are isomorphic as
/// decorated rooted trees. The derived order is lexicographic on (root, children).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    root: Decoration,
    children: Vec<Tree>,
}

/// A finite multiset of trees; the empty multiset is the empty forest, the unit of
/// concatenation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

/// An arbitrary, not yet canonical tree, e.g. as produced by a parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTree {
    pub root: Decoration,
    pub children: Vec<RawTree>,
}

impl RawTree {
    pub fn leaf(root: Decoration) -> Self {
        RawTree {
            root,
            children: Vec::new(),
        }
    }

    pub fn node(root: Decoration, children: Vec<RawTree>) -> Self {
        RawTree { root, children }
    }

    fn decorations(&self, out: &mut Vec<Decoration>) {
        out.push(self.root);
        for c in &self.children {
            c.decorations(out);
        }
    }
}

impl From<&Tree> for RawTree {
    fn from(t: &Tree) -> Self {
        RawTree {
            root: t.root,
            children: t.children.iter().map(RawTree::from).collect(),
        }
    }
}

/// Sorts every child list; rejects mixed alphabets.
pub fn canonicalize(raw: &RawTree) -> Result<Tree> {
    let mut decorations = Vec::new();
    raw.decorations(&mut decorations);
    common_alphabet(decorations)?;
    Ok(canonicalize_unchecked(raw))
}

fn canonicalize_unchecked(raw: &RawTree) -> Tree {
    let mut children: Vec<Tree> = raw.children.iter().map(canonicalize_unchecked).collect();
    children.sort();
    Tree {
        root: raw.root,
        children,
    }
}

/// Grafts the trees of `forest` onto a new root decorated by `root`.
pub fn b_plus(root: Decoration, forest: &Forest) -> Result<Tree> {
    merge_alphabets(Some(root.alphabet()), forest.alphabet())?;
    Ok(Tree {
        root,
        children: forest.trees.clone(),
    })
}

pub fn concat_forests(a: &Forest, b: &Forest) -> Result<Forest> {
    merge_alphabets(a.alphabet(), b.alphabet())?;
    Ok(a.concat_unchecked(b))
}

impl Tree {
    pub fn leaf(root: Decoration) -> Self {
        Tree {
            root,
            children: Vec::new(),
        }
    }

    /// `b_plus` for callers that already know the alphabets agree.
    pub(crate) fn graft(root: Decoration, forest: Forest) -> Self {
        Tree {
            root,
            children: forest.trees,
        }
    }

    pub fn root(&self) -> Decoration {
        self.root
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    /// The forest left after removing the root.
    pub fn branches(&self) -> Forest {
        Forest {
            trees: self.children.clone(),
        }
    }

    pub fn into_forest(self) -> Forest {
        Forest { trees: vec![self] }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.root.alphabet()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Tree::vertex_count).sum::<usize>()
    }

    /// Pre-order traversal of the decorations.
    pub fn decorations(&self) -> Vec<Decoration> {
        let mut out = Vec::with_capacity(self.vertex_count());
        self.push_decorations(&mut out);
        out
    }

    fn push_decorations(&self, out: &mut Vec<Decoration>) {
        out.push(self.root);
        for c in &self.children {
            c.push_decorations(out);
        }
    }

    /// True when no vertex has two or more children.
    pub fn is_ladder(&self) -> bool {
        match self.children.as_slice() {
            [] => true,
            [only] => only.is_ladder(),
            _ => false,
        }
    }

    /// The word read from root to leaf, if this tree is a ladder.
    pub fn ladder_word(&self) -> Option<Word> {
        let mut letters = vec![self.root];
        let mut cur = self;
        loop {
            match cur.children.as_slice() {
                [] => return Some(Word::from_letters_unchecked(letters)),
                [only] => {
                    letters.push(only.root);
                    cur = only;
                }
                _ => return None,
            }
        }
    }

    /// Calls `f(decoration, child_count)` on every vertex.
    pub fn for_each_vertex<F: FnMut(Decoration, usize)>(&self, f: &mut F) {
        f(self.root, self.children.len());
        for c in &self.children {
            c.for_each_vertex(f);
        }
    }
}

impl Forest {
    pub fn empty() -> Self {
        Forest::default()
    }

    /// Builds a forest from trees of a single alphabet.
    pub fn new(mut trees: Vec<Tree>) -> Result<Self> {
        common_alphabet(trees.iter().map(Tree::root))?;
        trees.sort();
        Ok(Forest { trees })
    }

    pub(crate) fn from_trees_unchecked(mut trees: Vec<Tree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn leaves<I: IntoIterator<Item = Decoration>>(decorations: I) -> Result<Self> {
        Forest::new(decorations.into_iter().map(Tree::leaf).collect())
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Number of trees (connected components).
    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn alphabet(&self) -> Option<Alphabet> {
        self.trees.first().map(Tree::alphabet)
    }

    pub(crate) fn concat_unchecked(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        trees.sort();
        Forest { trees }
    }

    /// The forest without its `index`-th tree (in canonical order).
    pub fn without(&self, index: usize) -> Forest {
        let mut trees = self.trees.clone();
        trees.remove(index);
        Forest { trees }
    }

    pub fn is_ladder_forest(&self) -> bool {
        self.trees.iter().all(Tree::is_ladder)
    }

    pub fn decorations(&self) -> Vec<Decoration> {
        self.trees.iter().flat_map(Tree::decorations).collect()
    }

    /// The ladder tree of a word; the empty word gives the empty forest.
    pub fn ladder(word: &Word) -> Forest {
        let mut forest = Forest::empty();
        for &letter in word.letters().iter().rev() {
            forest = Tree::graft(letter, forest).into_forest();
        }
        forest
    }

    pub fn for_each_vertex<F: FnMut(Decoration, usize)>(&self, f: &mut F) {
        for t in &self.trees {
            t.for_each_vertex(f);
        }
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        t.into_forest()
    }
}

/// Size, per-letter counts and additive weight of a forest or word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gradings {
    pub size: usize,
    pub counts: BTreeMap<Decoration, usize>,
    /// Sum of the positive-integer decorations; `None` for other alphabets.
    pub weight: Option<u64>,
}

impl Gradings {
    pub fn count(&self, d: Decoration) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }
}

/// Shared gradings for forests, trees and words.
pub trait Graded {
    fn decorations_iter(&self) -> Vec<Decoration>;

    fn size(&self) -> usize {
        self.decorations_iter().len()
    }

    fn count_of(&self, d: Decoration) -> usize {
        self.decorations_iter().into_iter().filter(|&e| e == d).count()
    }

    /// Additive weight; only defined on the positive integers.
    fn weight(&self) -> Result<u64> {
        let mut total = 0u64;
        for d in self.decorations_iter() {
            match d {
                Decoration::PosInt(n) => total += u64::from(n),
                other => {
                    return Err(Error::UnsupportedAlphabet {
                        expected: Alphabet::PosInt.name(),
                        found: other.alphabet().name(),
                    })
                }
            }
        }
        Ok(total)
    }

    fn gradings(&self) -> Gradings {
        let decorations = self.decorations_iter();
        let mut counts = BTreeMap::new();
        for &d in &decorations {
            *counts.entry(d).or_insert(0) += 1;
        }
        Gradings {
            size: decorations.len(),
            counts,
            weight: self.weight().ok(),
        }
    }
}

impl Graded for Forest {
    fn decorations_iter(&self) -> Vec<Decoration> {
        self.decorations()
    }
}

impl Graded for Tree {
    fn decorations_iter(&self) -> Vec<Decoration> {
        self.decorations()
    }
}
