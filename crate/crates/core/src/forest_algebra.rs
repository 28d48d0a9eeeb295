//! Structure maps on forests: flattening to words, the λ-shuffle on trees, associators,
//! the branched binarisation map and convergence classes.

use std::collections::HashMap;

use num_traits::Zero;

use crate::decoration::{Alphabet, Bin, Decoration, X, Y};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::syntax::format_forest;
use crate::tree::{Forest, Tree};
use crate::word::{shuffle_words, Word};

fn check_lambda_forest(forest: &Forest, lambda: &Rational) -> Result<()> {
    if lambda.is_zero() {
        return Ok(());
    }
    match forest.alphabet() {
        None | Some(Alphabet::PosInt) => Ok(()),
        Some(_) => Err(Error::SemigroupRequired),
    }
}

/// Flattening of weight λ, with a per-tree cache that can be reused across calls.
#[derive(Debug, Clone)]
pub struct Flattener {
    lambda: Rational,
    trees: HashMap<Tree, LinComb<Word>>,
}

impl Flattener {
    pub fn new(lambda: Rational) -> Self {
        Flattener {
            lambda,
            trees: HashMap::new(),
        }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn flatten_tree(&mut self, tree: &Tree) -> Result<LinComb<Word>> {
        if let Some(hit) = self.trees.get(tree) {
            return Ok(hit.clone());
        }
        let below = self.flatten_forest(&tree.branches())?;
        let root = tree.root();
        let out = below.map_linear(|w| LinComb::basis(w.prepend(root)));
        self.trees.insert(tree.clone(), out.clone());
        Ok(out)
    }

    pub fn flatten_forest(&mut self, forest: &Forest) -> Result<LinComb<Word>> {
        check_lambda_forest(forest, &self.lambda)?;
        let mut acc = LinComb::basis(Word::empty());
        for tree in forest.trees() {
            let flat = self.flatten_tree(tree)?;
            let lambda = self.lambda.clone();
            acc = acc.try_bilinear(&flat, |u, v| shuffle_words(u, v, &lambda))?;
        }
        Ok(acc)
    }

    pub fn flatten(&mut self, forests: &LinComb<Forest>) -> Result<LinComb<Word>> {
        forests.try_map_linear(|f| self.flatten_forest(f))
    }
}

/// `fl_λ` extended linearly.
pub fn flatten(forests: &LinComb<Forest>, lambda: &Rational) -> Result<LinComb<Word>> {
    Flattener::new(lambda.clone()).flatten(forests)
}

fn graft_all(root: Decoration, forests: &LinComb<Forest>) -> LinComb<Forest> {
    forests.map_linear(|f| LinComb::basis(Tree::graft(root, f.clone()).into_forest()))
}

/// λ-shuffle product on forests with a cache of already expanded pairs.
///
/// Two single trees `B^a(f)`, `B^b(g)` use the grafting rule
/// `B^a(f ⧢ B^b(g)) + B^b(B^a(f) ⧢ g) + λ B^{a•b}(f ⧢ g)`; any other pair of nonempty
/// forests `T₁⋯T_k`, `t₁⋯t_n` uses `1/(kn) Σ_{i,j} (T_i ⧢ t_j) · (rest of both)`.
/// The product is commutative but not associative.
#[derive(Debug, Clone)]
pub struct TreeShuffler {
    lambda: Rational,
    cache: HashMap<(Forest, Forest), LinComb<Forest>>,
}

impl TreeShuffler {
    pub fn new(lambda: Rational) -> Self {
        TreeShuffler {
            lambda,
            cache: HashMap::new(),
        }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn shuffle_forests(&mut self, a: &Forest, b: &Forest) -> Result<LinComb<Forest>> {
        crate::decoration::merge_alphabets(a.alphabet(), b.alphabet())?;
        check_lambda_forest(a, &self.lambda)?;
        check_lambda_forest(b, &self.lambda)?;
        self.shuffle_rec(a, b)
    }

    fn shuffle_rec(&mut self, a: &Forest, b: &Forest) -> Result<LinComb<Forest>> {
        if a.is_empty() {
            return Ok(LinComb::basis(b.clone()));
        }
        if b.is_empty() {
            return Ok(LinComb::basis(a.clone()));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let out = match (a.as_tree(), b.as_tree()) {
            (Some(s), Some(t)) => {
                let mut acc = graft_all(s.root(), &self.shuffle_rec(&s.branches(), b)?);
                acc.add_assign_ref(&graft_all(t.root(), &self.shuffle_rec(a, &t.branches())?));
                if !self.lambda.is_zero() {
                    let merged = s.root().combine(t.root())?;
                    let inner = self.shuffle_rec(&s.branches(), &t.branches())?;
                    acc.add_scaled(&self.lambda.clone(), &graft_all(merged, &inner));
                }
                acc
            }
            _ => {
                let (k, n) = (a.tree_count(), b.tree_count());
                let mut acc = LinComb::zero();
                for i in 0..k {
                    let rest_a = a.without(i);
                    let left = a.trees()[i].clone().into_forest();
                    for j in 0..n {
                        let rest_b = b.without(j);
                        let right = b.trees()[j].clone().into_forest();
                        let core = self.shuffle_rec(&left, &right)?;
                        let rest = rest_a.concat_unchecked(&rest_b);
                        acc.add_assign_ref(&core.map_linear(|f| LinComb::basis(f.concat_unchecked(&rest))));
                    }
                }
                acc.scale(&Rational::new((1).into(), ((k * n) as i64).into()))
            }
        };
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    pub fn shuffle(&mut self, a: &LinComb<Forest>, b: &LinComb<Forest>) -> Result<LinComb<Forest>> {
        a.try_bilinear(b, |f, g| self.shuffle_forests(f, g))
    }
}

/// Bilinear λ-shuffle on trees.
pub fn shuffle_lambda_trees(
    a: &LinComb<Forest>,
    b: &LinComb<Forest>,
    lambda: &Rational,
) -> Result<LinComb<Forest>> {
    TreeShuffler::new(lambda.clone()).shuffle(a, b)
}

/// `(F₁ ⧢ F₂) ⧢ F₃ − F₁ ⧢ (F₂ ⧢ F₃)`.
pub fn associator_trees(
    f1: &LinComb<Forest>,
    f2: &LinComb<Forest>,
    f3: &LinComb<Forest>,
    lambda: &Rational,
) -> Result<LinComb<Forest>> {
    let mut sh = TreeShuffler::new(lambda.clone());
    let left = {
        let inner = sh.shuffle(f1, f2)?;
        sh.shuffle(&inner, f3)?
    };
    let right = {
        let inner = sh.shuffle(f2, f3)?;
        sh.shuffle(f1, &inner)?
    };
    Ok(left - right)
}

fn binarise_tree_single(tree: &Tree) -> Result<Tree> {
    let n = tree.root().as_int().ok_or(Error::UnsupportedAlphabet {
        expected: Alphabet::PosInt.name(),
        found: tree.alphabet().name(),
    })?;
    let below = binarise_forest(&tree.branches())?;
    let mut out = Tree::graft(Y, below);
    for _ in 1..n {
        out = Tree::graft(X, out.into_forest());
    }
    Ok(out)
}

/// Branched binarisation of one forest: each vertex decorated `n` becomes a chain of
/// `n − 1` x-vertices above a y-vertex carrying the binarised children.
pub fn binarise_forest(forest: &Forest) -> Result<Forest> {
    let trees = forest
        .trees()
        .iter()
        .map(binarise_tree_single)
        .collect::<Result<Vec<_>>>()?;
    Ok(Forest::from_trees_unchecked(trees))
}

pub fn binarise_tree(forests: &LinComb<Forest>) -> Result<LinComb<Forest>> {
    forests.try_map_linear(|f| Ok(LinComb::basis(binarise_forest(f)?)))
}

fn debinarise_tree_single(tree: &Tree, whole: &Forest) -> Result<Tree> {
    let not_in_image = || Error::NotInImage(format_forest(whole));
    let mut n = 1u32;
    let mut cur = tree;
    loop {
        match cur.root() {
            Decoration::Bin(Bin::Y) => break,
            Decoration::Bin(Bin::X) => match cur.children() {
                [only] => {
                    n += 1;
                    cur = only;
                }
                _ => return Err(not_in_image()),
            },
            _ => return Err(not_in_image()),
        }
    }
    let below = cur
        .children()
        .iter()
        .map(|c| debinarise_tree_single(c, whole))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tree::graft(
        Decoration::int(n),
        Forest::from_trees_unchecked(below),
    ))
}

/// Inverse of [`binarise_forest`]; fails unless every x-vertex has exactly one child and
/// every maximal x-chain ends in a y-vertex.
pub fn debinarise_forest(forest: &Forest) -> Result<Forest> {
    let trees = forest
        .trees()
        .iter()
        .map(|t| debinarise_tree_single(t, forest))
        .collect::<Result<Vec<_>>>()?;
    Ok(Forest::from_trees_unchecked(trees))
}

pub fn debinarise_tree(forests: &LinComb<Forest>) -> Result<LinComb<Forest>> {
    forests.try_map_linear(|f| Ok(LinComb::basis(debinarise_forest(f)?)))
}

/// Strongest convergence class of a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    /// The empty forest, convergent in every alphabet.
    Empty,
    /// Positive-integer forest whose roots are all decorated ≥ 2.
    ConvPosInt,
    /// {x, y} forest that is semiconvergent with every root decorated x.
    ConvXY,
    /// {x, y} forest whose leaves and branching vertices are all decorated y.
    SemiXY,
    NotConvergent,
}

impl ConvergenceClass {
    pub fn is_convergent(self) -> bool {
        matches!(
            self,
            ConvergenceClass::Empty | ConvergenceClass::ConvPosInt | ConvergenceClass::ConvXY
        )
    }

    pub fn is_semiconvergent(self) -> bool {
        matches!(
            self,
            ConvergenceClass::Empty | ConvergenceClass::ConvXY | ConvergenceClass::SemiXY
        )
    }
}

pub fn is_convergent_forest(forest: &Forest) -> ConvergenceClass {
    match forest.alphabet() {
        None => ConvergenceClass::Empty,
        Some(Alphabet::PosInt) => {
            if forest
                .trees()
                .iter()
                .all(|t| t.root().as_int().is_some_and(|n| n >= 2))
            {
                ConvergenceClass::ConvPosInt
            } else {
                ConvergenceClass::NotConvergent
            }
        }
        Some(Alphabet::Bin) => {
            let mut semi = true;
            forest.for_each_vertex(&mut |d, children| {
                if children != 1 && d != Y {
                    semi = false;
                }
            });
            if !semi {
                ConvergenceClass::NotConvergent
            } else if forest.trees().iter().all(|t| t.root() == X) {
                ConvergenceClass::ConvXY
            } else {
                ConvergenceClass::SemiXY
            }
        }
        Some(Alphabet::Generic) => ConvergenceClass::NotConvergent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::syntax::parse_forest;

    fn f(text: &str) -> Forest {
        parse_forest(text).unwrap()
    }

    fn lf(text: &str) -> LinComb<Forest> {
        LinComb::basis(f(text))
    }

    fn lw(terms: &[(i64, &[u32])]) -> LinComb<Word> {
        LinComb::from_terms(terms.iter().map(|(c, w)| (int(*c), Word::from_ints(w))))
    }

    #[test]
    fn flatten_empty_is_empty_word() {
        for lambda in [int(-1), int(0), int(1)] {
            assert_eq!(
                flatten(&LinComb::unit(), &lambda).unwrap(),
                LinComb::basis(Word::empty())
            );
        }
    }

    #[test]
    fn flatten_two_twos_with_stuffle() {
        let got = flatten(&lf("2 2"), &int(1)).unwrap();
        assert_eq!(got, lw(&[(2, &[2, 2]), (1, &[4])]));
    }

    #[test]
    fn flatten_binary_corolla() {
        let got = flatten(&lf("x[y,y]"), &int(0)).unwrap();
        assert_eq!(got, LinComb::term(int(2), Word::from_xy("xyy").unwrap()));
    }

    #[test]
    fn flatten_rejects_binary_with_nonzero_lambda() {
        assert_eq!(flatten(&lf("x[y]"), &int(1)), Err(Error::SemigroupRequired));
    }

    #[test]
    fn tree_stuffle_example_two_plus_one() {
        let got = shuffle_lambda_trees(&lf("2 3"), &lf("4"), &int(1)).unwrap();
        let mut expected = LinComb::zero();
        for text in ["3 2[4]", "3 4[2]", "3 6", "2 3[4]", "2 4[3]", "2 7"] {
            expected.add_term(frac(1, 2), f(text));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn tree_shuffle_unit() {
        let g = lf("2[1,3]");
        assert_eq!(shuffle_lambda_trees(&LinComb::unit(), &g, &int(1)).unwrap(), g);
        assert_eq!(shuffle_lambda_trees(&g, &LinComb::unit(), &int(1)).unwrap(), g);
    }

    #[test]
    fn tree_stuffle_of_two_leaves() {
        let got = shuffle_lambda_trees(&lf("2"), &lf("2"), &int(1)).unwrap();
        let expected = LinComb::term(int(2), f("2[2]")) + lf("4");
        assert_eq!(got, expected);
    }

    #[test]
    fn associator_with_empty_slot_vanishes() {
        let a = associator_trees(&LinComb::unit(), &lf("2"), &lf("3[1]"), &int(1)).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn single_vertices_associate() {
        let a = associator_trees(&lf("2"), &lf("3"), &lf("4"), &int(1)).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn binarisation_examples() {
        assert_eq!(binarise_forest(&f("1")).unwrap(), f("y"));
        assert_eq!(binarise_forest(&f("2")).unwrap(), f("x[y]"));
        assert_eq!(binarise_forest(&Forest::empty()).unwrap(), Forest::empty());
        assert_eq!(binarise_forest(&f("2[1,1]")).unwrap(), f("x[y[y,y]]"));
    }

    #[test]
    fn debinarisation_rejects_bad_shapes() {
        assert!(matches!(debinarise_forest(&f("x")), Err(Error::NotInImage(_))));
        assert!(matches!(debinarise_forest(&f("x[y,y]")), Err(Error::NotInImage(_))));
        assert_eq!(debinarise_forest(&f("x[y[y,y]]")).unwrap(), f("2[1,1]"));
    }

    #[test]
    fn convergence_classes() {
        assert_eq!(is_convergent_forest(&f("2[1]")), ConvergenceClass::ConvPosInt);
        assert_eq!(is_convergent_forest(&f("1[2]")), ConvergenceClass::NotConvergent);
        assert!(is_convergent_forest(&Forest::empty()).is_convergent());
        assert_eq!(is_convergent_forest(&f("x[y[y,y]]")), ConvergenceClass::ConvXY);
        assert_eq!(is_convergent_forest(&f("y[y]")), ConvergenceClass::SemiXY);
        assert_eq!(is_convergent_forest(&f("x[y,y]")), ConvergenceClass::NotConvergent);
        assert_eq!(is_convergent_forest(&f("x[x]")), ConvergenceClass::NotConvergent);
    }
}
