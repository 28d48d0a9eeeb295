//! Named identity suites: each instance compares two evaluations and records the residual.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::decoration::{Decoration, Y};
use crate::enumerate::{convergent_compositions, forests_with_weight, random_forest};
use crate::error::{Error, Result};
use crate::forest_algebra::{
    associator_trees, binarise_forest, binarise_tree, is_convergent_forest, Flattener,
    TreeShuffler,
};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::syntax::format_forest;
use crate::tree::{Forest, Graded, Tree};
use crate::word::{binarise, debinarise, is_convergent_word, shuffle_words, Composition, Word};

use super::{eval_azv, eval_combination, eval_mzv, AzvFlavor, EvalOptions, MzvCombination};

pub const SUITES: &[&str] = &[
    "associator-kernel",
    "shuffle-vs-stuffle-inequality",
    "hoffman-words",
    "hoffman-trees",
    "word-morphism",
    "tree-shuffle-morphism",
    "concatenation-morphism",
    "ladder-consistency",
];

const SEED: u64 = 0x00a2_b02e_7a5e_ed00;

/// One checked instance of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRecord {
    pub suite: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SuiteRecord {
    fn new(suite: &str, instance: String, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).abs();
        SuiteRecord {
            suite: suite.to_string(),
            instance,
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn check_identity_suite(name: &str, weight_bound: u32, opts: &EvalOptions) -> Result<Vec<SuiteRecord>> {
    let w = weight_bound;
    match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(check_identity_suite(s, w, opts)?);
            }
            Ok(out)
        }
        "associator-kernel" => associator_kernel(w, 25, opts),
        "shuffle-vs-stuffle-inequality" => {
            let trees: Vec<Tree> = (2..=w as usize)
                .flat_map(crate::enumerate::trees_with_weight)
                .filter(|t| t.root().as_int().unwrap() >= 2)
                .collect();
            trees.iter().map(|t| shuffle_stuffle_inequality(t, opts)).collect()
        }
        "hoffman-words" => convergent_compositions(w.saturating_sub(1))
            .iter()
            .map(|s| hoffman_word(s, opts))
            .collect(),
        "hoffman-trees" => {
            let mut out = Vec::new();
            for f in (2..w as usize).flat_map(forests_with_weight) {
                if f.size() <= 4 && is_convergent_forest(&f).is_convergent() {
                    out.extend(hoffman_tree(&f, opts)?);
                }
            }
            Ok(out)
        }
        "word-morphism" => word_morphism(w, 20, opts),
        "tree-shuffle-morphism" => tree_morphism(w, 50, false, opts),
        "concatenation-morphism" => tree_morphism(w, 20, true, opts),
        "ladder-consistency" => convergent_compositions(w)
            .iter()
            .map(ladder_consistency)
            .collect(),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn morphism_tolerance(opts: &EvalOptions) -> f64 {
    100.0 * opts.precision
}

/// Weights `w₁, …, w_parts ≥ 2` with sum at most `bound`, or `None` if impossible.
fn random_weights(rng: &mut StdRng, parts: u32, bound: u32) -> Option<Vec<u32>> {
    if bound < 2 * parts {
        return None;
    }
    let mut left = bound;
    let mut out = Vec::new();
    for i in 0..parts {
        let reserve = 2 * (parts - i - 1);
        let w = rng.gen_range(2..=left - reserve);
        out.push(w);
        left -= w;
    }
    Some(out)
}

fn flavored(f: &Forest, flavor: AzvFlavor) -> Result<Forest> {
    match flavor {
        AzvFlavor::Shuffle => binarise_forest(f),
        _ => Ok(f.clone()),
    }
}

fn describe(forests: &[&Forest]) -> String {
    forests.iter().map(|f| format_forest(f)).collect::<Vec<_>>().join(" | ")
}

pub fn associator_kernel(bound: u32, per_flavor: usize, opts: &EvalOptions) -> Result<Vec<SuiteRecord>> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for flavor in AzvFlavor::ALL {
        for _ in 0..per_flavor {
            let Some(ws) = random_weights(&mut rng, 3, bound) else {
                return Ok(out);
            };
            let fs: Vec<Forest> = ws
                .iter()
                .map(|&w| flavored(&random_forest(&mut rng, w, 2), flavor))
                .collect::<Result<_>>()?;
            let a = associator_trees(
                &LinComb::basis(fs[0].clone()),
                &LinComb::basis(fs[1].clone()),
                &LinComb::basis(fs[2].clone()),
                &flavor.lambda(),
            )?;
            let e = eval_azv(&a, flavor, opts)?;
            out.push(SuiteRecord::new(
                "associator-kernel",
                format!("{flavor}: {}", describe(&[&fs[0], &fs[1], &fs[2]])),
                e.value,
                0.0,
                morphism_tolerance(opts),
            ));
        }
    }
    Ok(out)
}

/// `ζᵀ_⧢(𝔰ᵀ(T)) ≤ ζᵀ_⧢₁(T)`, with equality for ladders and a gap above
/// `100·precision` otherwise. Each side is evaluated to `precision/4`.
pub fn shuffle_stuffle_inequality(t: &Tree, opts: &EvalOptions) -> Result<SuiteRecord> {
    let fine = EvalOptions {
        precision: opts.precision / 4.0,
        ..*opts
    };
    let f = t.clone().into_forest();
    let lhs = eval_azv(&LinComb::basis(binarise_forest(&f)?), AzvFlavor::Shuffle, &fine)?;
    let rhs = eval_azv(&LinComb::basis(f.clone()), AzvFlavor::Stuffle, &fine)?;
    let tolerance = opts.precision;
    let mut r = SuiteRecord::new(
        "shuffle-vs-stuffle-inequality",
        format!("{}{}", format_forest(&f), if t.is_ladder() { " (ladder)" } else { "" }),
        lhs.value,
        rhs.value,
        tolerance,
    );
    r.pass = if t.is_ladder() {
        r.residual <= tolerance
    } else {
        rhs.value - lhs.value > 100.0 * opts.precision
    };
    Ok(r)
}

fn binary_to_zeta(words: &LinComb<Word>) -> Result<MzvCombination> {
    let mut out = LinComb::zero();
    for (w, q) in words.iter() {
        out.add_term(q.clone(), debinarise(w)?);
    }
    Ok(MzvCombination::strict(out))
}

fn count_divergent_words(words: &LinComb<Word>) -> usize {
    words.basis_elements().filter(|w| !is_convergent_word(w)).count()
}

/// `ζ(𝔰((1) ⧢₁ w) − (y) ⧢₀ 𝔰(w)) = 0`.
pub fn hoffman_word(s: &Composition, opts: &EvalOptions) -> Result<SuiteRecord> {
    let rel = hoffman_word_relation(s)?;
    let instance = format!("{s}");
    if count_divergent_words(&rel) > 0 {
        return Ok(SuiteRecord {
            pass: false,
            ..SuiteRecord::new("hoffman-words", instance, f64::NAN, 0.0, 10.0 * opts.precision)
        });
    }
    let e = eval_combination(&binary_to_zeta(&rel)?, opts)?;
    Ok(SuiteRecord::new("hoffman-words", instance, e.value, 0.0, 10.0 * opts.precision))
}

pub fn hoffman_word_relation(s: &Composition) -> Result<LinComb<Word>> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let w = s.to_word();
    let stuffled = shuffle_words(&Word::from_ints(&[1]), &w, &one)?;
    let mut lhs = LinComb::zero();
    for (u, q) in stuffled.iter() {
        lhs.add_term(q.clone(), binarise(&Composition::from_word(u)?));
    }
    let rhs = shuffle_words(&Word::new(vec![Y])?, &binarise(s), &zero)?;
    Ok(lhs - rhs)
}

/// `𝔰ᵀ(•1 ⧢₁ F) − •y ⧢₀ 𝔰ᵀ(F)`.
pub fn hoffman_tree_relation(f: &Forest) -> Result<LinComb<Forest>> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let leaf = LinComb::basis(Tree::leaf(Decoration::int(1)).into_forest());
    let a = binarise_tree(&TreeShuffler::new(one).shuffle(&leaf, &LinComb::basis(f.clone()))?)?;
    let y = LinComb::basis(Tree::leaf(Y).into_forest());
    let b = TreeShuffler::new(zero).shuffle(&y, &LinComb::basis(binarise_forest(f)?))?;
    Ok(a - b)
}

/// `𝔰(fl₁(•1·F)) − fl₀(𝔰ᵀ(•1·F))`.
pub fn branched_hoffman_relation(f: &Forest) -> Result<LinComb<Word>> {
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let g = f.concat_unchecked(&Tree::leaf(Decoration::int(1)).into_forest());
    let mut lhs = LinComb::zero();
    for (u, q) in Flattener::new(one).flatten_forest(&g)?.iter() {
        lhs.add_term(q.clone(), binarise(&Composition::from_word(u)?));
    }
    let rhs = Flattener::new(zero).flatten_forest(&binarise_forest(&g)?)?;
    Ok(lhs - rhs)
}

fn has_branching_vertex(f: &Forest) -> bool {
    !f.trees().iter().all(Tree::is_ladder)
}

pub fn hoffman_tree(f: &Forest, opts: &EvalOptions) -> Result<Vec<SuiteRecord>> {
    let name = "hoffman-trees";
    let d = hoffman_tree_relation(f)?;
    let divergent = d
        .basis_elements()
        .filter(|g| !is_convergent_forest(g).is_convergent())
        .count();
    let mut out = vec![SuiteRecord::new(
        name,
        format!("divergent forests left by {}", format_forest(f)),
        divergent as f64,
        0.0,
        0.0,
    )];
    // several ladder trees: 𝔰 of a stuffle is not the shuffle of the 𝔰's, so divergent
    // words can survive; only single trees and branching forests are decided
    let branching = has_branching_vertex(f);
    if !branching && f.tree_count() > 1 {
        return Ok(out);
    }
    let e = branched_hoffman_relation(f)?;
    let words = count_divergent_words(&e);
    let mut r = SuiteRecord::new(
        name,
        format!(
            "divergent words left by 1 {} ({})",
            format_forest(f),
            if branching { "branching" } else { "ladder" }
        ),
        words as f64,
        0.0,
        0.0,
    );
    r.pass = (words > 0) == branching;
    out.push(r);
    if !branching {
        let value = eval_combination(&binary_to_zeta(&e)?, opts)?;
        out.push(SuiteRecord::new(
            name,
            format!("value of branched relation for {}", format_forest(f)),
            value.value,
            0.0,
            10.0 * opts.precision,
        ));
    }
    Ok(out)
}

fn word_morphism(bound: u32, per_flavor: usize, opts: &EvalOptions) -> Result<Vec<SuiteRecord>> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::new();
    for flavor in AzvFlavor::ALL {
        for _ in 0..per_flavor {
            let Some(ws) = random_weights(&mut rng, 2, bound) else {
                return Ok(out);
            };
            let (u, v) = (
                random_composition_of(&mut rng, ws[0]),
                random_composition_of(&mut rng, ws[1]),
            );
            let mzv = flavor.mzv_flavor();
            let product = match flavor {
                AzvFlavor::Shuffle => {
                    binary_to_zeta(&shuffle_words(&binarise(&u), &binarise(&v), &flavor.lambda())?)?
                }
                _ => {
                    let mut terms = LinComb::zero();
                    for (w, q) in shuffle_words(&u.to_word(), &v.to_word(), &flavor.lambda())?.iter() {
                        terms.add_term(q.clone(), Composition::from_word(w)?);
                    }
                    MzvCombination { terms, flavor: mzv }
                }
            };
            let lhs = eval_combination(&product, opts)?;
            let a = eval_mzv(&u, mzv, opts)?;
            let b = eval_mzv(&v, mzv, opts)?;
            out.push(SuiteRecord::new(
                "word-morphism",
                format!("{flavor}: {u} * {v}"),
                lhs.value,
                a.value * b.value,
                morphism_tolerance(opts),
            ));
        }
    }
    Ok(out)
}

fn random_composition_of(rng: &mut StdRng, weight: u32) -> Composition {
    let first = rng.gen_range(2..=weight);
    let mut parts = vec![first];
    let mut left = weight - first;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Composition::from_slice(&parts)
}

/// `ζᵀ(F ⋆ F′) = ζᵀ(F) ζᵀ(F′)` for the tree λ-shuffle, or for concatenation.
fn tree_morphism(bound: u32, per_flavor: usize, concat: bool, opts: &EvalOptions) -> Result<Vec<SuiteRecord>> {
    let name = if concat {
        "concatenation-morphism"
    } else {
        "tree-shuffle-morphism"
    };
    let mut rng = StdRng::seed_from_u64(SEED ^ if concat { 2 } else { 3 });
    let mut out = Vec::new();
    for flavor in AzvFlavor::ALL {
        for _ in 0..per_flavor {
            let Some(ws) = random_weights(&mut rng, 2, bound) else {
                return Ok(out);
            };
            let f = flavored(&random_forest(&mut rng, ws[0], 2), flavor)?;
            let g = flavored(&random_forest(&mut rng, ws[1], 2), flavor)?;
            out.push(tree_morphism_instance(name, &f, &g, flavor, concat, opts)?);
        }
    }
    Ok(out)
}

pub fn tree_morphism_instance(
    name: &str,
    f: &Forest,
    g: &Forest,
    flavor: AzvFlavor,
    concat: bool,
    opts: &EvalOptions,
) -> Result<SuiteRecord> {
    let product = if concat {
        LinComb::basis(f.concat_unchecked(g))
    } else {
        TreeShuffler::new(flavor.lambda()).shuffle_forests(f, g)?
    };
    let lhs = eval_azv(&product, flavor, opts)?;
    let a = eval_azv(&LinComb::basis(f.clone()), flavor, opts)?;
    let b = eval_azv(&LinComb::basis(g.clone()), flavor, opts)?;
    Ok(SuiteRecord::new(
        name,
        format!("{flavor}: {}", describe(&[f, g])),
        lhs.value,
        a.value * b.value,
        morphism_tolerance(opts),
    ))
}

fn ladder_consistency(s: &Composition) -> Result<SuiteRecord> {
    let ladder = Forest::ladder(&s.to_word());
    let c = super::reduce_azv(&LinComb::basis(ladder.clone()), AzvFlavor::Stuffle)?;
    let exact = c.terms == LinComb::basis(s.clone());
    Ok(SuiteRecord::new(
        "ladder-consistency",
        format_forest(&ladder),
        if exact { 0.0 } else { 1.0 },
        0.0,
        0.0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_weight() {
        let opts = EvalOptions::default();
        for name in SUITES {
            let records = check_identity_suite(name, 5, &opts).unwrap();
            for r in &records {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            check_identity_suite("nope", 4, &EvalOptions::default()),
            Err(Error::UnknownSuite(_))
        ));
    }
}
