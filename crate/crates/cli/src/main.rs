use std::process::ExitCode;

use arbozeta::json::{
    composition_to_json, forest_to_json, lincomb_to_json, word_to_json,
};
use arbozeta::syntax::{
    format_forest_lincomb, format_word_lincomb, parse_expr, parse_forest_lincomb,
    parse_word_lincomb, Expr,
};
use arbozeta::zeta::{
    check_identity_suite, eval_arborified_polylog, eval_azv, eval_combination, eval_polylog,
    reduce_azv, AzvFlavor, EvalOptions, MzvCombination, MzvFlavor, DEFAULT_PRECISION,
};
use arbozeta::{
    associator_trees, binarise, binarise_tree, debinarise, debinarise_tree, flatten,
    shuffle_lambda_trees, shuffle_lambda_words, Composition, Error, LinComb, Rational, Word,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arbozeta", version, about = "Arborified zeta values: forests, words, shuffles and their evaluation")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Target absolute error for numeric results
    #[arg(long, default_value_t = DEFAULT_PRECISION, global = true)]
    precision: f64,
    /// Cap on series terms (default: ARBOZETA_MAX_N or 10^7)
    #[arg(long, global = true)]
    max_n: Option<usize>,
}

#[derive(Args, Clone)]
struct Lambda {
    /// Weight λ of the shuffle, a rational p or p/q
    #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    lambda: Rational,
}

#[derive(Args, Clone)]
struct Flavor {
    #[arg(long, default_value = "stuffle")]
    flavor: AzvFlavor,
}

#[derive(Subcommand)]
enum Verb {
    /// Parse an expression and print its canonical form
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// λ-shuffle of two word combinations
    ShuffleWords {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        lambda: Lambda,
    },
    /// λ-shuffle of two forest combinations
    ShuffleTrees {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        lambda: Lambda,
    },
    /// Flatten forests to words
    Flatten {
        #[arg(allow_hyphen_values = true)]
        forests: String,
        #[command(flatten)]
        lambda: Lambda,
    },
    /// Binarise positive-integer words (or debinarise {x,y} words with --inverse)
    Binarize {
        #[arg(allow_hyphen_values = true)]
        words: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Branched binarisation of forests (or its inverse with --inverse)
    BinarizeTree {
        #[arg(allow_hyphen_values = true)]
        forests: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Reduce an arborified zeta value to multiple zeta values
    Reduce {
        #[arg(allow_hyphen_values = true)]
        forests: String,
        #[command(flatten)]
        flavor: Flavor,
    },
    /// Evaluate an arborified zeta value (forests) or a multiple zeta value (words)
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        flavor: Flavor,
    },
    /// Multiple polylogarithm of a word, or arborified polylogarithm of an {x,y} forest
    Polylog {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        z: f64,
    },
    /// (F₁ ⧢ F₂) ⧢ F₃ − F₁ ⧢ (F₂ ⧢ F₃)
    Associator {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(allow_hyphen_values = true)]
        third: String,
        #[command(flatten)]
        lambda: Lambda,
    },
    /// Run an identity suite (or "all")
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        weight_bound: u32,
    },
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    arbozeta::rational::parse(text).map_err(|e| e.to_string())
}

enum Failure {
    Parse(String),
    Domain(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownSuite(_) => Failure::Parse(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
}

fn forests_out(c: &LinComb<arbozeta::Forest>) -> Output {
    Output {
        text: format_forest_lincomb(c),
        json: lincomb_to_json(c, forest_to_json),
    }
}

fn words_out(c: &LinComb<Word>) -> Output {
    Output {
        text: format_word_lincomb(c),
        json: lincomb_to_json(c, word_to_json),
    }
}

fn zeta_out(c: &MzvCombination) -> Output {
    let flavor = match c.flavor {
        MzvFlavor::Strict => "strict",
        MzvFlavor::Star => "star",
    };
    Output {
        text: c.to_string(),
        json: json!({
            "flavor": flavor,
            "terms": lincomb_to_json(&c.terms, composition_to_json),
        }),
    }
}

fn number_out(value: f64, abs_error: f64, precision: f64) -> Output {
    Output {
        text: format!("{value:.10} ± {precision:e}"),
        json: json!({ "value": value, "abs_error": abs_error, "precision": precision }),
    }
}

/// Words over integers are MZV indices; binary words go through debinarisation.
fn words_to_zeta(words: &LinComb<Word>, flavor: AzvFlavor) -> Result<MzvCombination, Error> {
    let mut terms = LinComb::zero();
    for (w, q) in words.iter() {
        let s = match w.alphabet() {
            Some(arbozeta::Alphabet::Bin) => debinarise(w)?,
            _ => Composition::from_word(w)?,
        };
        terms.add_term(q.clone(), s);
    }
    let flavor = if flavor == AzvFlavor::Star {
        MzvFlavor::Star
    } else {
        MzvFlavor::Strict
    };
    Ok(MzvCombination { terms, flavor })
}

fn run(verb: Verb, common: &Common) -> Result<Output, Failure> {
    let mut opts = EvalOptions::from_env();
    if let Some(n) = common.max_n {
        opts.max_n = n;
    }
    // internal target three digits finer, so ten printed decimals are stable
    opts.precision = (common.precision * 1e-3).max(common.precision.min(1e-13));
    let out = match verb {
        Verb::Parse { expr } => match parse_expr(&expr)? {
            Expr::Forests(c) => forests_out(&c),
            Expr::Words(c) => words_out(&c),
        },
        Verb::ShuffleWords { left, right, lambda } => {
            let (a, b) = (parse_word_lincomb(&left)?, parse_word_lincomb(&right)?);
            words_out(&shuffle_lambda_words(&a, &b, &lambda.lambda)?)
        }
        Verb::ShuffleTrees { left, right, lambda } => {
            let (a, b) = (parse_forest_lincomb(&left)?, parse_forest_lincomb(&right)?);
            forests_out(&shuffle_lambda_trees(&a, &b, &lambda.lambda)?)
        }
        Verb::Flatten { forests, lambda } => {
            words_out(&flatten(&parse_forest_lincomb(&forests)?, &lambda.lambda)?)
        }
        Verb::Binarize { words, inverse } => {
            let c = parse_word_lincomb(&words)?;
            let mapped = if inverse {
                c.try_map_linear(|w| Ok(LinComb::basis(debinarise(w)?.to_word())))?
            } else {
                c.try_map_linear(|w| Ok(LinComb::basis(binarise(&Composition::from_word(w)?))))?
            };
            words_out(&mapped)
        }
        Verb::BinarizeTree { forests, inverse } => {
            let c = parse_forest_lincomb(&forests)?;
            forests_out(&if inverse {
                debinarise_tree(&c)?
            } else {
                binarise_tree(&c)?
            })
        }
        Verb::Reduce { forests, flavor } => {
            zeta_out(&reduce_azv(&parse_forest_lincomb(&forests)?, flavor.flavor)?)
        }
        Verb::Eval { expr, flavor } => {
            let e = match parse_expr(&expr)? {
                Expr::Forests(c) => eval_azv(&c, flavor.flavor, &opts)?,
                Expr::Words(c) => eval_combination(&words_to_zeta(&c, flavor.flavor)?, &opts)?,
            };
            number_out(e.value, e.abs_error, common.precision)
        }
        Verb::Polylog { expr, z } => match parse_expr(&expr)? {
            Expr::Forests(c) => {
                let e = eval_arborified_polylog(&c, z, &opts)?;
                number_out(e.value, e.abs_error, common.precision)
            }
            Expr::Words(c) => {
                let (mut value, mut err) = (0.0, 0.0);
                let mass: f64 = c.iter().map(|(_, q)| arbozeta::rational::abs_f64(q)).sum();
                let per = EvalOptions {
                    precision: opts.precision / mass.max(1.0),
                    ..opts
                };
                for (w, q) in c.iter() {
                    let s = match w.alphabet() {
                        Some(arbozeta::Alphabet::Bin) => debinarise(w)?,
                        _ => Composition::from_word(w)?,
                    };
                    let e = eval_polylog(&s, z, &per)?;
                    let qf = arbozeta::rational::to_f64(q);
                    value += qf * e.value;
                    err += qf.abs() * e.abs_error;
                }
                number_out(value, err, common.precision)
            }
        },
        Verb::Associator {
            first,
            second,
            third,
            lambda,
        } => {
            let (a, b, c) = (
                parse_forest_lincomb(&first)?,
                parse_forest_lincomb(&second)?,
                parse_forest_lincomb(&third)?,
            );
            forests_out(&associator_trees(&a, &b, &c, &lambda.lambda)?)
        }
        Verb::Check {
            suite,
            weight_bound,
        } => {
            let suite_opts = EvalOptions {
                precision: common.precision,
                ..opts
            };
            let records = check_identity_suite(&suite, weight_bound, &suite_opts)?;
            let failed = records.iter().filter(|r| !r.pass).count();
            let mut text = String::new();
            for r in &records {
                text.push_str(&format!(
                    "{} {}: {} lhs={:.12} rhs={:.12} residual={:.3e} tol={:.1e}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.suite,
                    r.instance,
                    r.lhs,
                    r.rhs,
                    r.residual,
                    r.tolerance
                ));
            }
            text.push_str(&format!("{} instances, {} failed", records.len(), failed));
            let out = Output {
                text,
                json: Value::Array(records.iter().map(|r| r.to_json()).collect()),
            };
            if failed > 0 {
                let body = if common.json {
                    serde_json::to_string_pretty(&out.json).unwrap()
                } else {
                    out.text
                };
                return Err(Failure::Check(body));
            }
            out
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    match run(cli.verb, &common) {
        Ok(out) => {
            if common.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Check(body)) => {
            println!("{body}");
            ExitCode::from(1)
        }
    }
}
