mod common;

use arbozeta::enumerate::{forests_up_to_vertices, forests_with_vertices, words_of_length};
use arbozeta::json::{forest_from_json, forest_to_json, lincomb_from_json, lincomb_to_json};
use arbozeta::rational::{frac, int};
use arbozeta::syntax::{
    format_forest, format_forest_lincomb, format_word, parse_forest, parse_forest_lincomb,
    parse_word,
};
use arbozeta::{
    b_plus, binarise, binarise_tree, canonicalize, concat_forests, concat_words, debinarise,
    flatten, is_convergent_forest, is_convergent_word, is_semiconvergent_word,
    shuffle_lambda_trees, shuffle_words, Composition, ConvergenceClass, Decoration, Error,
    Flattener, Forest, Graded, LinComb, RawTree, Tree, TreeShuffler, Word, X, Y,
};
use common::{ints, leaf};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn lc(text: &str) -> LinComb<Forest> {
    parse_forest_lincomb(text).unwrap()
}

fn raw_tree(max_vertices: usize) -> impl Strategy<Value = RawTree> {
    let leaf = (1u32..=4).prop_map(|n| RawTree::leaf(Decoration::int(n)));
    leaf.prop_recursive(4, max_vertices as u32, 3, |inner| {
        ((1u32..=4), prop::collection::vec(inner, 0..4))
            .prop_map(|(n, children)| RawTree::node(Decoration::int(n), children))
    })
}

fn forest(max_vertices: usize) -> impl Strategy<Value = Forest> {
    prop::collection::vec(raw_tree(max_vertices), 0..3).prop_map(|raws| {
        Forest::new(raws.iter().map(|r| canonicalize(r).unwrap()).collect()).unwrap()
    })
}

fn enumerated_forest(max_vertices: usize) -> impl Strategy<Value = Forest> {
    prop::sample::select(forests_up_to_vertices(max_vertices, &ints(&[1, 2, 3])))
}

fn shuffled(raw: &RawTree, seed: u64) -> RawTree {
    let mut children: Vec<RawTree> =
        raw.children.iter().enumerate().map(|(i, c)| shuffled(c, seed.wrapping_add(i as u64))).collect();
    if seed % 2 == 1 {
        children.reverse();
    }
    if children.len() > 2 && seed.is_multiple_of(3) {
        children.rotate_left(1);
    }
    RawTree::node(raw.root, children)
}

proptest! {
    #[test]
    fn canonical_form_ignores_child_order(raw in raw_tree(12), seed in any::<u64>()) {
        let t = canonicalize(&raw).unwrap();
        prop_assert_eq!(canonicalize(&RawTree::from(&t)).unwrap(), t.clone());
        prop_assert_eq!(canonicalize(&shuffled(&raw, seed)).unwrap(), t);
    }

    #[test]
    fn gradings_add_under_concatenation(a in forest(6), b in forest(6)) {
        let ab = concat_forests(&a, &b).unwrap();
        prop_assert_eq!(ab.size(), a.size() + b.size());
        prop_assert_eq!(ab.weight().unwrap(), a.weight().unwrap() + b.weight().unwrap());
        prop_assert_eq!(ab, concat_forests(&b, &a).unwrap());
    }

    #[test]
    fn product_distributes_over_sums(a in forest(4), b in forest(4), c in forest(4)) {
        let (a, b, c) = (LinComb::basis(a), LinComb::basis(b), LinComb::basis(c));
        let bc = b.clone() + c.clone();
        prop_assert_eq!(a.mul(&bc).unwrap(), a.mul(&b).unwrap() + a.mul(&c).unwrap());
    }

    #[test]
    fn forest_text_round_trips(f in forest(8)) {
        prop_assert_eq!(parse_forest(&format_forest(&f)).unwrap(), f);
    }

    #[test]
    fn forest_json_round_trips(f in forest(8)) {
        prop_assert_eq!(forest_from_json(&forest_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn lincomb_text_and_json_round_trip(
        terms in prop::collection::vec((forest(5), -9i64..=9, 1i64..=5), 0..5)
    ) {
        let c = LinComb::from_terms(terms.into_iter().map(|(f, p, q)| (frac(p, q), f)));
        prop_assert_eq!(parse_forest_lincomb(&format_forest_lincomb(&c)).unwrap(), c.clone());
        let js = lincomb_to_json(&c, forest_to_json);
        prop_assert_eq!(lincomb_from_json(&js, forest_from_json).unwrap(), c);
    }

    #[test]
    fn tree_shuffle_commutes(a in enumerated_forest(3), b in enumerated_forest(3), l in -1i64..=1) {
        let (a, b) = (LinComb::basis(a), LinComb::basis(b));
        prop_assert_eq!(
            shuffle_lambda_trees(&a, &b, &int(l)).unwrap(),
            shuffle_lambda_trees(&b, &a, &int(l)).unwrap()
        );
    }

    #[test]
    fn flattening_has_integer_coefficients(f in enumerated_forest(5), l in -1i64..=1) {
        prop_assert!(flatten(&LinComb::basis(f), &int(l)).unwrap().has_integer_coefficients());
    }
}

#[test]
fn parse_print_round_trip_on_generated_expressions() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = prop::collection::vec((forest(6), -5i64..=5, 1i64..=4), 1..4);
    let mut checked = 0;
    for _ in 0..200 {
        let terms = strategy.new_tree(&mut runner).unwrap().current();
        let c = LinComb::from_terms(terms.into_iter().map(|(f, p, q)| (frac(p, q), f)));
        let text = format_forest_lincomb(&c);
        assert_eq!(parse_forest_lincomb(&text).unwrap(), c, "{text}");
        checked += 1;
    }
    assert_eq!(checked, 200);
}

#[test]
fn concatenation_is_a_commutative_monoid_on_small_forests() {
    let forests = forests_up_to_vertices(4, &[X, Y]);
    let empty = Forest::empty();
    for a in &forests {
        assert_eq!(&concat_forests(&empty, a).unwrap(), a);
        for b in &forests {
            if a.size() + b.size() > 4 {
                continue;
            }
            let ab = concat_forests(a, b).unwrap();
            assert_eq!(ab, concat_forests(b, a).unwrap());
            for c in &forests {
                if ab.size() + c.size() > 4 {
                    continue;
                }
                let bc = concat_forests(b, c).unwrap();
                assert_eq!(concat_forests(&ab, c).unwrap(), concat_forests(a, &bc).unwrap());
            }
        }
    }
}

#[test]
fn word_shuffles_are_associative_and_commutative() {
    let letters = ints(&[1, 2]);
    let words: Vec<Word> = (0..=5).flat_map(|n| words_of_length(n, &letters)).collect();
    for l in [-1, 0, 1] {
        let lambda = int(l);
        let sh = |a: &LinComb<Word>, b: &LinComb<Word>| a.try_bilinear(b, |p, q| shuffle_words(p, q, &lambda)).unwrap();
        for u in &words {
            for v in &words {
                if u.len() + v.len() > 5 {
                    continue;
                }
                let (lu, lv) = (LinComb::basis(u.clone()), LinComb::basis(v.clone()));
                assert_eq!(sh(&lu, &lv), sh(&lv, &lu));
                for w in &words {
                    if u.len() + v.len() + w.len() <= 5 {
                        let lw = LinComb::basis(w.clone());
                        assert_eq!(sh(&sh(&lu, &lv), &lw), sh(&lu, &sh(&lv, &lw)));
                    }
                }
            }
        }
    }
}

#[test]
fn flattening_is_a_morphism_for_concatenation() {
    for (l, decorations) in [(-1, ints(&[1, 2])), (0, vec![X, Y]), (1, ints(&[1, 2]))] {
        let mut fl = Flattener::new(int(l));
        let forests = forests_up_to_vertices(4, &decorations);
        for a in &forests {
            for b in &forests {
                if a.size() + b.size() > 4 {
                    continue;
                }
                let lhs = fl.flatten_forest(&concat_forests(a, b).unwrap()).unwrap();
                let fa = fl.flatten_forest(a).unwrap();
                let fb = fl.flatten_forest(b).unwrap();
                let rhs = fa.try_bilinear(&fb, |p, q| shuffle_words(p, q, &int(l))).unwrap();
                assert_eq!(lhs, rhs, "{} | {}", format_forest(a), format_forest(b));
            }
        }
    }
}

#[test]
fn tree_shuffle_gradings() {
    let forests = forests_up_to_vertices(3, &ints(&[1, 2]));
    for l in [-1, 0, 1] {
        let mut sh = TreeShuffler::new(int(l));
        for a in &forests {
            for b in &forests {
                for f in sh.shuffle_forests(a, b).unwrap().basis_elements() {
                    if l == 0 {
                        assert_eq!(f.size(), a.size() + b.size());
                    }
                    assert_eq!(f.weight().unwrap(), a.weight().unwrap() + b.weight().unwrap());
                }
            }
        }
    }
}

#[test]
fn linear_extension_oracle_on_small_posets() {
    let mut fl = Flattener::new(int(0));
    for n in 0..=5 {
        for f in forests_with_vertices(n, &[X]) {
            let expected = common::linear_extensions(&f);
            assert_eq!(fl.flatten_forest(&f).unwrap().coefficient_sum(), int(expected as i64));
        }
    }
    assert_eq!(common::linear_extensions(&parse_forest("1 1 1").unwrap()), 6);
    assert_eq!(common::linear_extensions(&parse_forest("1[1,1]").unwrap()), 2);
}

#[test]
fn canonical_tree_examples() {
    let a = canonicalize(&RawTree::node(Decoration::int(2), vec![RawTree::leaf(Decoration::int(1)), RawTree::leaf(Decoration::int(3))])).unwrap();
    let b = canonicalize(&RawTree::node(Decoration::int(2), vec![RawTree::leaf(Decoration::int(3)), RawTree::leaf(Decoration::int(1))])).unwrap();
    assert_eq!(a, b);
    assert_eq!(canonicalize(&RawTree::leaf(Decoration::int(5))).unwrap(), leaf(5));
    let ladder = b_plus(Decoration::int(1), &leaf(2).into_forest()).unwrap();
    assert!(ladder.is_ladder());
    assert_eq!(ladder.children().len(), 1);
    assert!(ladder.children()[0].children().is_empty());
    let mixed = RawTree::node(X, vec![RawTree::leaf(Decoration::int(1))]);
    assert!(matches!(canonicalize(&mixed), Err(Error::AlphabetMismatch(..))));
}

#[test]
fn b_plus_examples() {
    let w = Decoration::Generic(1);
    let (w1, w2) = (Decoration::Generic(2), Decoration::Generic(3));
    assert_eq!(b_plus(w, &Forest::empty()).unwrap(), Tree::leaf(w));
    let ladder = b_plus(w, &Tree::leaf(w1).into_forest()).unwrap();
    assert_eq!(format_forest(&ladder.clone().into_forest()), "g1[g2]");
    let corolla = b_plus(w, &Forest::leaves([w1, w2]).unwrap()).unwrap();
    assert_eq!(corolla.vertex_count(), 3);
    assert_eq!(corolla.children().len(), 2);
}

#[test]
fn concatenation_and_grading_examples() {
    let f = parse_forest("2 2").unwrap();
    let g = parse_forest("4").unwrap();
    let fg = concat_forests(&f, &g).unwrap();
    assert_eq!(fg, parse_forest("2 2 4").unwrap());
    assert_eq!(fg.size(), 3);
    assert_eq!(concat_forests(&Forest::empty(), &f).unwrap(), f);

    let w = Word::from_ints(&[2, 1, 3]);
    assert_eq!((w.size(), w.weight().unwrap(), w.gradings().count(Decoration::int(1))), (3, 6, 1));
    let t = parse_forest("2[1,1]").unwrap();
    assert_eq!((t.size(), t.weight().unwrap(), t.gradings().count(Decoration::int(1))), (3, 4, 2));
    assert_eq!((Forest::empty().size(), Forest::empty().weight().unwrap()), (0, 0));
}

#[test]
fn lincomb_examples() {
    let a = lc("2 + 3[1]");
    assert!((a.clone() + a.scale(&int(-1))).is_zero());
    assert_eq!(lc("2*2").scale(&frac(1, 2)), lc("2"));
    assert_eq!(lc("2 + 3").mul(&lc("4")).unwrap(), lc("2 4 + 3 4"));
    assert!(!LinComb::<Forest>::unit().is_zero());
}

#[test]
fn word_examples() {
    assert_eq!(concat_words(&Word::empty(), &Word::from_ints(&[3])).unwrap(), Word::from_ints(&[3]));
    assert_eq!(concat_words(&Word::from_ints(&[2]), &Word::from_ints(&[1, 3])).unwrap(), Word::from_ints(&[2, 1, 3]));
    assert_eq!(concat_words(&parse_word("\"x\"").unwrap(), &parse_word("\"yy\"").unwrap()).unwrap(), Word::from_xy("xyy").unwrap());

    let st = shuffle_words(&Word::from_ints(&[2]), &Word::from_ints(&[3]), &int(1)).unwrap();
    let expected = LinComb::from_terms([
        (int(1), Word::from_ints(&[2, 3])),
        (int(1), Word::from_ints(&[3, 2])),
        (int(1), Word::from_ints(&[5])),
    ]);
    assert_eq!(st, expected);
    let w = Word::from_ints(&[1, 2]);
    assert_eq!(shuffle_words(&w, &Word::empty(), &int(1)).unwrap(), LinComb::basis(w));
    let xy = shuffle_words(&Word::from_xy("x").unwrap(), &Word::from_xy("y").unwrap(), &int(0)).unwrap();
    assert_eq!(xy, LinComb::from_terms([(int(1), Word::from_xy("xy").unwrap()), (int(1), Word::from_xy("yx").unwrap())]));
    assert!(matches!(
        shuffle_words(&Word::from_xy("x").unwrap(), &Word::from_xy("y").unwrap(), &int(1)),
        Err(Error::SemigroupRequired)
    ));

    assert!(is_convergent_word(&Word::from_ints(&[2, 1, 1])));
    assert!(!is_convergent_word(&Word::from_ints(&[1, 2])));
    assert!(is_convergent_word(&Word::empty()));
    assert!(is_convergent_word(&Word::from_xy("xyy").unwrap()));
    let yxy = Word::from_xy("yxy").unwrap();
    assert!(!is_convergent_word(&yxy) && is_semiconvergent_word(&yxy));
    assert_eq!(format_word(&yxy), "(y,x,y)");
    assert_eq!(parse_word(&format_word(&yxy)).unwrap(), yxy);
}

#[test]
fn binarisation_examples() {
    assert_eq!(binarise(&Composition::from_slice(&[2, 1])), Word::from_xy("xyy").unwrap());
    assert_eq!(binarise(&Composition::from_slice(&[3, 2])), Word::from_xy("xxyxy").unwrap());
    assert_eq!(binarise(&Composition::empty()), Word::empty());
    assert_eq!(debinarise(&Word::from_xy("xyy").unwrap()).unwrap(), Composition::from_slice(&[2, 1]));
    assert_eq!(debinarise(&Word::from_xy("yxy").unwrap()).unwrap(), Composition::from_slice(&[1, 2]));
    assert_eq!(debinarise(&Word::empty()).unwrap(), Composition::empty());
    assert!(matches!(debinarise(&Word::from_xy("yx").unwrap()), Err(Error::NotSemiconvergent(..))));

    assert_eq!(binarise_tree(&lc("1")).unwrap(), lc("y"));
    assert_eq!(binarise_tree(&lc("2")).unwrap(), lc("x[y]"));
    assert_eq!(binarise_tree(&lc("{}")).unwrap(), lc("{}"));
    assert_eq!(binarise_tree(&lc("2[1,1]")).unwrap(), lc("x[y[y,y]]"));
}

#[test]
fn flattening_examples() {
    assert_eq!(flatten(&lc("{}"), &int(1)).unwrap(), LinComb::basis(Word::empty()));
    let expected = LinComb::from_terms([(int(2), Word::from_ints(&[2, 2])), (int(1), Word::from_ints(&[4]))]);
    assert_eq!(flatten(&lc("2 2"), &int(1)).unwrap(), expected);
    assert_eq!(flatten(&lc("x[y,y]"), &int(0)).unwrap(), LinComb::term(int(2), Word::from_xy("xyy").unwrap()));
}

#[test]
fn tree_shuffle_examples() {
    let half = frac(1, 2);
    let lhs = shuffle_lambda_trees(&lc("2 3"), &lc("4"), &int(1)).unwrap();
    let rhs = lc("2 3[4] + 2 4[3] + 2 7 + 3 2[4] + 3 4[2] + 3 6").scale(&half);
    assert_eq!(lhs, rhs);
    let f = lc("2[1] 3");
    assert_eq!(shuffle_lambda_trees(&lc("{}"), &f, &int(1)).unwrap(), f);
    assert_eq!(shuffle_lambda_trees(&lc("2"), &lc("2"), &int(1)).unwrap(), lc("2*2[2] + 4"));
    assert!(matches!(shuffle_lambda_trees(&lc("x"), &lc("y"), &int(1)), Err(Error::SemigroupRequired)));
    assert!(matches!(shuffle_lambda_trees(&lc("x"), &lc("2"), &int(0)), Err(Error::AlphabetMismatch(..))));
}

#[test]
fn associator_examples() {
    let one = int(1);
    assert!(arbozeta::associator_trees(&lc("{}"), &lc("2 3"), &lc("4[1]"), &one).unwrap().is_zero());
    // single trees never meet the 1/(kn) rule, so three leaves associate
    assert!(arbozeta::associator_trees(&lc("2"), &lc("2"), &lc("2"), &one).unwrap().is_zero());
    assert!(!arbozeta::associator_trees(&lc("2 2"), &lc("2"), &lc("2"), &one).unwrap().is_zero());
}

#[test]
fn associator_of_the_four_leaf_example_follows_the_grafting_rules() {
    // computed from the grafting and 1/(kn) rules; every associator lies in the kernel of fl₀
    let assoc = arbozeta::associator_trees(&lc("g1 g2"), &lc("g3"), &lc("g4"), &int(0)).unwrap();
    let two_edge = lc("g1[g3] g2[g4] + g1[g3] g4[g2] + g1[g4] g2[g3] + g1[g4] g3[g2] + g2[g3] g4[g1] + g2[g4] g3[g1] + g3[g1] g4[g2] + g3[g2] g4[g1]");
    let chains = lc("g1 g2[g3[g4]] + g1 g2[g4[g3]] + g1 g3[g2[g4]] + g1 g3[g4[g2]] + g1 g4[g2[g3]] + g1 g4[g3[g2]] + g1[g3[g4]] g2 + g1[g4[g3]] g2 + g2 g3[g1[g4]] + g2 g3[g4[g1]] + g2 g4[g1[g3]] + g2 g4[g3[g1]]");
    assert_eq!(assoc, (two_edge - chains).scale(&frac(1, 4)));
    assert!(flatten(&assoc, &int(0)).unwrap().is_zero());
}

#[test]
fn convergence_examples() {
    let class = |s: &str| is_convergent_forest(&parse_forest(s).unwrap());
    assert_eq!(class("2[1]"), ConvergenceClass::ConvPosInt);
    assert_eq!(class("1[2]"), ConvergenceClass::NotConvergent);
    assert!(class("{}").is_convergent());
    assert_eq!(class("x[y[y,y]]"), ConvergenceClass::ConvXY);
    assert_eq!(class("y[x[y]]"), ConvergenceClass::SemiXY);
    assert_eq!(class("g1"), ConvergenceClass::NotConvergent);
}
