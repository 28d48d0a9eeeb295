//! Exhaustive and random generation of forests, words and compositions.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::decoration::{Decoration, X, Y};
use crate::tree::{Forest, Tree};
use crate::word::{Composition, Word};

/// All forests with exactly `vertices` vertices over the given decorations.
pub fn forests_with_vertices(vertices: usize, decorations: &[Decoration]) -> Vec<Forest> {
    let mut e = Enumerator::new(decorations, |_| 1);
    e.forests(vertices).into_iter().collect()
}

/// All trees with exactly `vertices` vertices over the given decorations.
pub fn trees_with_vertices(vertices: usize, decorations: &[Decoration]) -> Vec<Tree> {
    let mut e = Enumerator::new(decorations, |_| 1);
    e.trees(vertices).into_iter().collect()
}

/// All forests with at most `vertices` vertices, the empty forest included.
pub fn forests_up_to_vertices(vertices: usize, decorations: &[Decoration]) -> Vec<Forest> {
    let mut e = Enumerator::new(decorations, |_| 1);
    (0..=vertices).flat_map(|n| e.forests(n)).collect()
}

/// All positive-integer forests with decoration sum exactly `weight`.
pub fn forests_with_weight(weight: usize) -> Vec<Forest> {
    let decorations: Vec<Decoration> = (1..=weight.max(1) as u32).map(Decoration::int).collect();
    let mut e = Enumerator::new(&decorations, |d| d.as_int().unwrap() as usize);
    e.forests(weight).into_iter().collect()
}

pub fn trees_with_weight(weight: usize) -> Vec<Tree> {
    let decorations: Vec<Decoration> = (1..=weight.max(1) as u32).map(Decoration::int).collect();
    let mut e = Enumerator::new(&decorations, |d| d.as_int().unwrap() as usize);
    e.trees(weight).into_iter().collect()
}

/// Enumerates by a size that is additive over vertices, with `size(d) ≥ 1`.
struct Enumerator<'a, S: Fn(Decoration) -> usize> {
    decorations: &'a [Decoration],
    size: S,
    trees: BTreeMap<usize, BTreeSet<Tree>>,
    forests: BTreeMap<usize, BTreeSet<Forest>>,
}

impl<'a, S: Fn(Decoration) -> usize> Enumerator<'a, S> {
    fn new(decorations: &'a [Decoration], size: S) -> Self {
        Enumerator {
            decorations,
            size,
            trees: BTreeMap::new(),
            forests: BTreeMap::new(),
        }
    }

    fn trees(&mut self, n: usize) -> BTreeSet<Tree> {
        if let Some(hit) = self.trees.get(&n) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        for &d in self.decorations {
            let s = (self.size)(d);
            if s > n || s == 0 {
                continue;
            }
            for f in self.forests(n - s) {
                out.insert(Tree::graft(d, f));
            }
        }
        self.trees.insert(n, out.clone());
        out
    }

    /// Forests are built with their largest tree first, which makes each appear once.
    fn forests(&mut self, n: usize) -> BTreeSet<Forest> {
        if let Some(hit) = self.forests.get(&n) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(Forest::empty());
        } else {
            for k in 1..=n {
                let firsts = self.trees(k);
                let rests = self.forests(n - k);
                for t in &firsts {
                    for rest in &rests {
                        if rest.trees().last().is_some_and(|u| u > t) {
                            continue;
                        }
                        out.insert(rest.concat_unchecked(&t.clone().into_forest()));
                    }
                }
            }
        }
        self.forests.insert(n, out.clone());
        out
    }
}

/// All compositions of `weight`.
pub fn compositions(weight: u32) -> Vec<Composition> {
    if weight == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::new();
    for first in 1..=weight {
        for rest in compositions(weight - first) {
            let mut parts = vec![first];
            parts.extend_from_slice(rest.parts());
            out.push(Composition::from_slice(&parts));
        }
    }
    out
}

/// Convergent compositions (first part ≥ 2) of weight `2..=max_weight`.
pub fn convergent_compositions(max_weight: u32) -> Vec<Composition> {
    (2..=max_weight)
        .flat_map(compositions)
        .filter(Composition::is_convergent)
        .collect()
}

/// All words of the given length over the given letters.
pub fn words_of_length(len: usize, letters: &[Decoration]) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Decoration>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from_letters_unchecked).collect()
}

pub fn binary_words(len: usize) -> Vec<Word> {
    words_of_length(len, &[X, Y])
}

/// Random positive-integer tree of weight exactly `weight` with root ≥ `root_min`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, weight: u32, root_min: u32) -> Tree {
    assert!(weight >= root_min.max(1), "weight too small for the root");
    let root = rng.gen_range(root_min.max(1)..=weight);
    let below = random_forest(rng, weight - root, 1);
    Tree::graft(Decoration::int(root), below)
}

/// Random positive-integer forest of weight exactly `weight`, all roots ≥ `root_min`
/// (weights left below `root_min` are absorbed into the last tree).
pub fn random_forest<R: Rng + ?Sized>(rng: &mut R, weight: u32, root_min: u32) -> Forest {
    let root_min = root_min.max(1);
    let mut trees = Vec::new();
    let mut left = weight;
    while left >= root_min {
        let mut w = rng.gen_range(root_min..=left);
        if left - w < root_min {
            w = left;
        }
        trees.push(random_tree(rng, w, root_min));
        left -= w;
    }
    Forest::from_trees_unchecked(trees)
}

/// Random convergent positive-integer forest of weight in `2..=max_weight`.
pub fn random_convergent_forest<R: Rng + ?Sized>(rng: &mut R, max_weight: u32) -> Forest {
    let w = rng.gen_range(2..=max_weight.max(2));
    random_forest(rng, w, 2)
}

/// Random convergent composition of weight in `2..=max_weight`.
pub fn random_convergent_composition<R: Rng + ?Sized>(rng: &mut R, max_weight: u32) -> Composition {
    let w = rng.gen_range(2..=max_weight.max(2));
    let first = rng.gen_range(2..=w);
    let mut parts = vec![first];
    let mut left = w - first;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Composition::from_slice(&parts)
}
