//! Multiple zeta values, star values and multiple polylogarithms; reduction of arborified
//! zeta values to integer combinations of them.

mod series;
pub mod suites;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::decoration::Alphabet;
use crate::error::{Error, Result};
use crate::forest_algebra::{is_convergent_forest, Flattener};
use crate::lincomb::LinComb;
use crate::rational::{self, Rational};
use crate::syntax::{format_forest, format_zeta_lincomb};
use crate::tree::Forest;
use crate::word::{debinarise, Composition};

pub use suites::{check_identity_suite, SuiteRecord, SUITES};

pub const DEFAULT_PRECISION: f64 = 1e-8;
pub const DEFAULT_MAX_N: usize = 10_000_000;
pub const MAX_N_ENV: &str = "ARBOZETA_MAX_N";

/// Target absolute error and cap on the number of series terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub precision: f64,
    pub max_n: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            precision: DEFAULT_PRECISION,
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl EvalOptions {
    pub fn with_precision(precision: f64) -> Self {
        EvalOptions {
            precision,
            ..Default::default()
        }
    }

    /// Default options with the term cap taken from `ARBOZETA_MAX_N` when set.
    pub fn from_env() -> Self {
        let max_n = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_N);
        EvalOptions {
            max_n,
            ..Default::default()
        }
    }

    fn scaled(&self, precision: f64) -> Self {
        EvalOptions {
            precision,
            max_n: self.max_n,
        }
    }
}

/// Strict (`n₁ > ⋯ > n_k`) or star (`n₁ ≥ ⋯ ≥ n_k`) nested sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MzvFlavor {
    Strict,
    Star,
}

/// Which flattening turns an arborified zeta value into multiple zeta values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AzvFlavor {
    /// `fl₁`, strict sums over positive-integer forests.
    Stuffle,
    /// `fl₋₁`, non-strict sums over positive-integer forests.
    Star,
    /// `fl₀` on {x, y} forests, iterated integrals.
    Shuffle,
}

impl AzvFlavor {
    pub const ALL: [AzvFlavor; 3] = [AzvFlavor::Stuffle, AzvFlavor::Star, AzvFlavor::Shuffle];

    pub fn lambda(self) -> Rational {
        match self {
            AzvFlavor::Stuffle => Rational::one(),
            AzvFlavor::Star => -Rational::one(),
            AzvFlavor::Shuffle => Rational::zero(),
        }
    }

    pub fn mzv_flavor(self) -> MzvFlavor {
        match self {
            AzvFlavor::Star => MzvFlavor::Star,
            _ => MzvFlavor::Strict,
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            AzvFlavor::Shuffle => Alphabet::Bin,
            _ => Alphabet::PosInt,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AzvFlavor::Stuffle => "stuffle",
            AzvFlavor::Star => "star",
            AzvFlavor::Shuffle => "shuffle",
        }
    }
}

impl fmt::Display for AzvFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AzvFlavor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stuffle" => Ok(AzvFlavor::Stuffle),
            "star" => Ok(AzvFlavor::Star),
            "shuffle" => Ok(AzvFlavor::Shuffle),
            other => Err(format!("unknown flavor '{other}' (stuffle, star or shuffle)")),
        }
    }
}

/// A number with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            abs_error: 0.0,
        }
    }

    pub fn mul(&self, other: &Estimate) -> Estimate {
        Estimate {
            value: self.value * other.value,
            abs_error: self.value.abs() * other.abs_error
                + other.value.abs() * self.abs_error
                + self.abs_error * other.abs_error,
        }
    }

    pub fn sub(&self, other: &Estimate) -> Estimate {
        Estimate {
            value: self.value - other.value,
            abs_error: self.abs_error + other.abs_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MzvEval {
    pub value: f64,
    pub abs_error: f64,
    pub index: Composition,
    pub flavor: MzvFlavor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolylogEval {
    pub value: f64,
    pub abs_error: f64,
    pub z: f64,
    pub index: Composition,
}

/// Canonical rational combination of (star) multiple zeta values; the empty
/// composition stands for the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MzvCombination {
    pub terms: LinComb<Composition>,
    pub flavor: MzvFlavor,
}

impl MzvCombination {
    pub fn strict(terms: LinComb<Composition>) -> Self {
        MzvCombination {
            terms,
            flavor: MzvFlavor::Strict,
        }
    }

    /// The same number written with strict values only.
    pub fn to_strict(&self) -> Result<MzvCombination> {
        match self.flavor {
            MzvFlavor::Strict => Ok(self.clone()),
            MzvFlavor::Star => {
                let mut out = LinComb::zero();
                for (s, q) in self.terms.iter() {
                    out.add_scaled(q, &star_to_strict(s)?.terms);
                }
                Ok(MzvCombination::strict(out))
            }
        }
    }
}

impl fmt::Display for MzvCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_zeta_lincomb(&self.terms, self.flavor == MzvFlavor::Star))
    }
}

fn check_precision(precision: f64) -> Result<()> {
    if precision.is_finite() && precision > 0.0 {
        Ok(())
    } else {
        Err(Error::PrecisionUnreachable {
            precision,
            max_n: 0,
        })
    }
}

/// `ζ(s)` or `ζ*(s)` with `|value − true| ≤ abs_error ≤ precision`.
pub fn eval_mzv(s: &Composition, flavor: MzvFlavor, opts: &EvalOptions) -> Result<MzvEval> {
    check_precision(opts.precision)?;
    if !s.is_convergent() {
        return Err(Error::DivergentIndex(s.to_string()));
    }
    let est = match (flavor, s.depth()) {
        (_, 0) => Estimate::exact(1.0),
        (MzvFlavor::Star, d) if d > 1 => eval_combination(&star_to_strict(s)?, opts)?,
        _ => {
            let r = series::mzv(s, opts.precision, opts.max_n)?;
            Estimate {
                value: r.value,
                abs_error: r.bound,
            }
        }
    };
    Ok(MzvEval {
        value: est.value,
        abs_error: est.abs_error,
        index: s.clone(),
        flavor,
    })
}

fn check_z(z: f64) -> Result<()> {
    if (0.0..1.0).contains(&z) {
        Ok(())
    } else {
        Err(Error::DomainError(z))
    }
}

/// `Li_s(z)` for `0 ≤ z < 1` and any index; `Li_∅ = 1` and `Li_s(0) = 0` otherwise.
pub fn eval_polylog(s: &Composition, z: f64, opts: &EvalOptions) -> Result<PolylogEval> {
    check_z(z)?;
    check_precision(opts.precision)?;
    let r = series::polylog(s.parts(), z, opts.precision, opts.max_n)?;
    Ok(PolylogEval {
        value: r.value,
        abs_error: r.bound,
        z,
        index: s.clone(),
    })
}

/// `ζ*(s) = Σ ζ(t)` over all `t` obtained from `s` by summing runs of adjacent parts.
pub fn star_to_strict(s: &Composition) -> Result<MzvCombination> {
    if !s.is_convergent() {
        return Err(Error::DivergentIndex(s.to_string()));
    }
    let parts = s.parts();
    let mut out = LinComb::zero();
    if parts.is_empty() {
        out.add_term(Rational::one(), Composition::empty());
        return Ok(MzvCombination::strict(out));
    }
    let gaps = parts.len() - 1;
    for mask in 0u64..(1u64 << gaps) {
        let mut merged = vec![parts[0]];
        for (i, &p) in parts[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                *merged.last_mut().unwrap() += p;
            } else {
                merged.push(p);
            }
        }
        out.add_term(Rational::one(), Composition::from_slice(&merged));
    }
    Ok(MzvCombination::strict(out))
}

/// `Σ q·ζ(s)` with the error budget split evenly over the non-constant terms.
pub fn eval_combination(c: &MzvCombination, opts: &EvalOptions) -> Result<Estimate> {
    check_precision(opts.precision)?;
    let strict = c.to_strict()?;
    let weight: f64 = strict
        .terms
        .iter()
        .filter(|(s, _)| !s.is_empty())
        .map(|(_, q)| rational::abs_f64(q))
        .sum();
    let per = if weight > 0.0 {
        opts.precision / weight
    } else {
        opts.precision
    };
    let mut total = Estimate::exact(0.0);
    for (s, q) in strict.terms.iter() {
        let qf = rational::to_f64(q);
        let e = eval_mzv(s, MzvFlavor::Strict, &opts.scaled(per))?;
        total.value += qf * e.value;
        total.abs_error += qf.abs() * e.abs_error;
    }
    total.abs_error += f64::EPSILON * strict.terms.len() as f64 * total.value.abs();
    Ok(total)
}

fn require_alphabet(forest: &Forest, expected: Alphabet) -> Result<()> {
    match forest.alphabet() {
        Some(a) if a != expected => Err(Error::UnsupportedAlphabet {
            expected: expected.name(),
            found: a.name(),
        }),
        _ => Ok(()),
    }
}

/// Exact reduction of an arborified zeta value to (star) multiple zeta values.
///
/// Convergence is checked on the canonical combination, so divergent forests that
/// cancel are accepted.
pub fn reduce_azv(forests: &LinComb<Forest>, flavor: AzvFlavor) -> Result<MzvCombination> {
    let mut fl = Flattener::new(flavor.lambda());
    let mut out = LinComb::zero();
    for (f, q) in forests.iter() {
        require_alphabet(f, flavor.alphabet())?;
        if !is_convergent_forest(f).is_convergent() {
            return Err(Error::NonConvergent(format_forest(f)));
        }
        let words = fl.flatten_forest(f)?;
        assert!(words.has_integer_coefficients(), "flattening has integer coefficients");
        for (w, c) in words.iter() {
            let s = match flavor {
                AzvFlavor::Shuffle => debinarise(w)?,
                _ => Composition::from_word(w)?,
            };
            out.add_term(q * c, s);
        }
    }
    Ok(MzvCombination {
        terms: out,
        flavor: flavor.mzv_flavor(),
    })
}

/// `ζᵀ(F)` for the given flavor.
pub fn eval_azv(forests: &LinComb<Forest>, flavor: AzvFlavor, opts: &EvalOptions) -> Result<Estimate> {
    eval_combination(&reduce_azv(forests, flavor)?, opts)
}

/// `Li_F(z)` for semiconvergent {x, y} forests, computed from `fl₀(F)` word by word.
pub fn eval_arborified_polylog(forests: &LinComb<Forest>, z: f64, opts: &EvalOptions) -> Result<Estimate> {
    check_z(z)?;
    check_precision(opts.precision)?;
    let mut fl = Flattener::new(Rational::zero());
    let mut words = LinComb::zero();
    for (f, q) in forests.iter() {
        require_alphabet(f, Alphabet::Bin)?;
        if !is_convergent_forest(f).is_semiconvergent() {
            return Err(Error::NotSemiconvergent(format_forest(f)));
        }
        words.add_scaled(q, &fl.flatten_forest(f)?);
    }
    let weight: f64 = words.iter().map(|(_, q)| rational::abs_f64(q)).sum();
    let per = opts.precision / weight.max(1.0);
    let mut total = Estimate::exact(0.0);
    for (w, q) in words.iter() {
        let qf = rational::to_f64(q);
        let e = eval_polylog(&debinarise(w)?, z, &opts.scaled(per))?;
        total.value += qf * e.value;
        total.abs_error += qf.abs() * e.abs_error;
    }
    total.abs_error += f64::EPSILON * words.len() as f64 * total.value.abs();
    Ok(total)
}
