//! Tag-and-children JSON encoding of types, for tooling.
//!
//! `{"tag":"Forall","binder":"X","children":[{"tag":"Var","name":"X"}]}`

use serde_json::{json, Value};

use super::TypeExpr;
use crate::error::{Error, Result};
use crate::ident::Ident;

pub fn type_to_json(t: &TypeExpr) -> Value {
    match t {
        TypeExpr::Top | TypeExpr::Bot => json!({ "tag": t.tag() }),
        TypeExpr::Var(x) => json!({ "tag": "Var", "name": x.name() }),
        TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) | TypeExpr::Par(a, b) => {
            json!({ "tag": t.tag(), "children": [type_to_json(a), type_to_json(b)] })
        }
        TypeExpr::Forall(x, a) => {
            json!({ "tag": "Forall", "binder": x.name(), "children": [type_to_json(a)] })
        }
    }
}

pub fn type_from_json(v: &Value) -> Result<TypeExpr> {
    let bad = |msg: &str| Error::syntax(0, format!("bad type JSON: {msg}"));
    let tag = v.get("tag").and_then(Value::as_str).ok_or_else(|| bad("missing tag"))?;
    let children = || -> Result<Vec<TypeExpr>> {
        v.get("children")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing children"))?
            .iter()
            .map(type_from_json)
            .collect()
    };
    let name = |key: &str| -> Result<Ident> {
        v.get(key)
            .and_then(Value::as_str)
            .map(Ident::new)
            .ok_or_else(|| bad(&format!("missing {key}")))
    };
    let two = |cs: Vec<TypeExpr>| -> Result<(TypeExpr, TypeExpr)> {
        let [a, b]: [TypeExpr; 2] = cs.try_into().map_err(|_| bad("expected two children"))?;
        Ok((a, b))
    };
    Ok(match tag {
        "Top" => TypeExpr::Top,
        "Bot" => TypeExpr::Bot,
        "Var" => TypeExpr::Var(name("name")?),
        "Prod" => {
            let (a, b) = two(children()?)?;
            TypeExpr::prod(a, b)
        }
        "Arrow" => {
            let (a, b) = two(children()?)?;
            TypeExpr::arrow(a, b)
        }
        "Par" => {
            let (a, b) = two(children()?)?;
            TypeExpr::par(a, b)
        }
        "Forall" => {
            let [body]: [TypeExpr; 1] = children()?
                .try_into()
                .map_err(|_| bad("expected one child"))?;
            TypeExpr::forall(name("binder")?, body)
        }
        other => return Err(bad(&format!("unknown tag {other}"))),
    })
}
