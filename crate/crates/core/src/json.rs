//! JSON forms: a tree is `{"d": 2 | "x" | "y", "c": [...]}`, a forest an array of trees,
//! a word an array of decorations and a combination `[{"coeff": "p/q", "basis": ...}]`.

use serde_json::{json, Value};

use crate::decoration::{Decoration, X, Y};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational;
use crate::tree::{canonicalize, Forest, RawTree, Tree};
use crate::word::{Composition, Word};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.into(),
    }
}

pub fn decoration_to_json(d: Decoration) -> Value {
    match d {
        Decoration::PosInt(n) => json!(n),
        Decoration::Bin(_) => json!(d.to_string()),
        Decoration::Generic(id) => json!({ "g": id }),
    }
}

pub fn decoration_from_json(v: &Value) -> Result<Decoration> {
    match v {
        Value::Number(n) => {
            let n = n
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| bad(format!("decoration {n} is not a positive integer")))?;
            Decoration::try_int(n).map_err(|e| bad(e.to_string()))
        }
        Value::String(s) if s == "x" => Ok(X),
        Value::String(s) if s == "y" => Ok(Y),
        Value::Object(m) => match m.get("g").and_then(Value::as_u64) {
            Some(id) => Ok(Decoration::Generic(id as u32)),
            None => Err(bad("generic decoration needs an integer field \"g\"")),
        },
        other => Err(bad(format!("invalid decoration {other}"))),
    }
}

pub fn tree_to_json(t: &Tree) -> Value {
    json!({
        "d": decoration_to_json(t.root()),
        "c": t.children().iter().map(tree_to_json).collect::<Vec<_>>(),
    })
}

fn raw_tree_from_json(v: &Value) -> Result<RawTree> {
    let d = v.get("d").ok_or_else(|| bad("tree needs a \"d\" field"))?;
    let children = match v.get("c") {
        None => Vec::new(),
        Some(Value::Array(cs)) => cs.iter().map(raw_tree_from_json).collect::<Result<_>>()?,
        Some(_) => return Err(bad("\"c\" must be an array")),
    };
    Ok(RawTree::node(decoration_from_json(d)?, children))
}

pub fn tree_from_json(v: &Value) -> Result<Tree> {
    canonicalize(&raw_tree_from_json(v)?)
}

pub fn forest_to_json(f: &Forest) -> Value {
    Value::Array(f.trees().iter().map(tree_to_json).collect())
}

pub fn forest_from_json(v: &Value) -> Result<Forest> {
    match v {
        Value::Array(ts) => Forest::new(ts.iter().map(tree_from_json).collect::<Result<_>>()?),
        Value::Object(_) => Ok(tree_from_json(v)?.into_forest()),
        _ => Err(bad("forest must be an array of trees")),
    }
}

pub fn word_to_json(w: &Word) -> Value {
    Value::Array(w.letters().iter().map(|&d| decoration_to_json(d)).collect())
}

pub fn word_from_json(v: &Value) -> Result<Word> {
    match v {
        Value::Array(ds) => Word::new(ds.iter().map(decoration_from_json).collect::<Result<_>>()?),
        _ => Err(bad("word must be an array of decorations")),
    }
}

pub fn composition_to_json(s: &Composition) -> Value {
    json!(s.parts())
}

pub fn lincomb_to_json<B: Ord + Clone>(c: &LinComb<B>, basis: impl Fn(&B) -> Value) -> Value {
    Value::Array(
        c.iter()
            .map(|(b, q)| json!({ "coeff": rational::format(q), "basis": basis(b) }))
            .collect(),
    )
}

pub fn lincomb_from_json<B: Ord + Clone>(
    v: &Value,
    basis: impl Fn(&Value) -> Result<B>,
) -> Result<LinComb<B>> {
    let Value::Array(items) = v else {
        return Err(bad("combination must be an array of terms"));
    };
    let mut out = LinComb::zero();
    for item in items {
        let coeff = match item.get("coeff") {
            Some(Value::String(s)) => rational::parse(s)?,
            Some(Value::Number(n)) if n.is_i64() => rational::int(n.as_i64().unwrap()),
            _ => return Err(bad("term needs a \"coeff\" string p/q")),
        };
        let b = basis(item.get("basis").ok_or_else(|| bad("term needs a \"basis\""))?)?;
        out.add_term(coeff, b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_forest_lincomb;

    #[test]
    fn forest_round_trip() {
        let c = parse_forest_lincomb("1/2*2[1,3[2]] 1 - 4").unwrap();
        let v = lincomb_to_json(&c, forest_to_json);
        assert_eq!(lincomb_from_json(&v, forest_from_json).unwrap(), c);
    }

    #[test]
    fn tree_shape() {
        let t = crate::syntax::parse_tree("x[y]").unwrap();
        assert_eq!(
            tree_to_json(&t),
            json!({"d": "x", "c": [{"d": "y", "c": []}]})
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decoration_from_json(&json!(0)).is_err());
        assert!(decoration_from_json(&json!("z")).is_err());
        assert!(forest_from_json(&json!([{"d": 1}, {"d": "x"}])).is_err());
    }
}
