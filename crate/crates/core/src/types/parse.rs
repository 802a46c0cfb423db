//! Concrete syntax for types.
//!
//! ```text
//! type  ::= forall X Y... . type | arrow
//! arrow ::= par [-> type]          right-associative
//! par   ::= prod (/\ prod)*        left-associative
//! prod  ::= atom (* atom)*         left-associative
//! atom  ::= T | _|_ | X | ( type ) | forall ...
//! ```

use super::{CalculusMode, TypeExpr};
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::syntax::{tokenize, Cursor, Tok};

pub fn parse_type(text: &str, mode: CalculusMode) -> Result<TypeExpr> {
    let t = parse_type_unchecked(text)?;
    mode.check_type(&t)?;
    Ok(t)
}

/// Parses with every constructor allowed.
pub fn parse_type_unchecked(text: &str) -> Result<TypeExpr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::syntax(0, "empty type"));
    }
    let mut cur = Cursor::new(&toks, text.len());
    let t = parse_in(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.unexpected("expected end of type"));
    }
    Ok(t)
}

/// Parses one type starting at the cursor; stops before any token that
/// cannot continue a type.
pub(crate) fn parse_in(cur: &mut Cursor) -> Result<TypeExpr> {
    if cur.eat_sym("forall") {
        let mut binders = vec![Ident::new(&cur.expect_ident()?)];
        while let Some(Tok::Ident(name)) = cur.peek() {
            binders.push(Ident::new(name));
            cur.bump();
        }
        cur.expect_sym(".")?;
        let body = parse_in(cur)?;
        return Ok(TypeExpr::foralls(&binders, body));
    }
    let lhs = parse_par(cur)?;
    if cur.eat_sym("->") {
        let rhs = parse_in(cur)?;
        return Ok(TypeExpr::arrow(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_par(cur: &mut Cursor) -> Result<TypeExpr> {
    let mut lhs = parse_prod(cur)?;
    while cur.eat_sym("/\\") {
        let rhs = parse_prod(cur)?;
        lhs = TypeExpr::par(lhs, rhs);
    }
    Ok(lhs)
}

fn parse_prod(cur: &mut Cursor) -> Result<TypeExpr> {
    let mut lhs = parse_atom(cur)?;
    while cur.eat_sym("*") {
        let rhs = parse_atom(cur)?;
        lhs = TypeExpr::prod(lhs, rhs);
    }
    Ok(lhs)
}

fn parse_atom(cur: &mut Cursor) -> Result<TypeExpr> {
    match cur.peek() {
        Some(Tok::Sym("T")) => {
            cur.bump();
            Ok(TypeExpr::Top)
        }
        Some(Tok::Sym("_|_")) => {
            cur.bump();
            Ok(TypeExpr::Bot)
        }
        Some(Tok::Ident(name)) => {
            let t = TypeExpr::var(name.as_str());
            cur.bump();
            Ok(t)
        }
        Some(Tok::Sym("(")) => {
            cur.bump();
            let t = parse_in(cur)?;
            cur.expect_sym(")")?;
            Ok(t)
        }
        Some(Tok::Sym("forall")) => parse_in(cur),
        _ => Err(cur.unexpected("expected a type")),
    }
}
