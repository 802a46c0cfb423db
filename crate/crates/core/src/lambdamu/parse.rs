//! Concrete syntax for terms.
//!
//! ```text
//! term ::= lam x : type . term | Lam X . term
//!        | mu a : type . term | mu (a : type, b : type) . term
//!        | [a] term | [a, b] term | app
//! app  ::= head (atom | { type })*
//! head ::= pi1 atom | pi2 atom | atom
//! atom ::= x | * | ( term ) | ( term , term )
//! ```

use super::Term;
use crate::error::{Error, Result};
use crate::ident::Ident;
use crate::syntax::{tokenize, Cursor, Tok};
use crate::types::parse::parse_in as parse_type_in;

pub fn parse_term(text: &str) -> Result<Term> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::syntax(0, "empty term"));
    }
    let mut cur = Cursor::new(&toks, text.len());
    let t = term(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.unexpected("expected end of term"));
    }
    Ok(t)
}

fn ident(cur: &mut Cursor) -> Result<Ident> {
    Ok(Ident::new(&cur.expect_ident()?))
}

fn term(cur: &mut Cursor) -> Result<Term> {
    if cur.eat_sym("lam") {
        let x = ident(cur)?;
        cur.expect_sym(":")?;
        let ty = parse_type_in(cur)?;
        cur.expect_sym(".")?;
        return Ok(Term::lam(x, ty, term(cur)?));
    }
    if cur.eat_sym("Lam") {
        let x = ident(cur)?;
        cur.expect_sym(".")?;
        return Ok(Term::tlam(x, term(cur)?));
    }
    if cur.eat_sym("mu") {
        if cur.eat_sym("(") {
            let a = ident(cur)?;
            cur.expect_sym(":")?;
            let ta = parse_type_in(cur)?;
            cur.expect_sym(",")?;
            let b = ident(cur)?;
            cur.expect_sym(":")?;
            let tb = parse_type_in(cur)?;
            cur.expect_sym(")")?;
            cur.expect_sym(".")?;
            return Ok(Term::mu2(a, ta, b, tb, term(cur)?));
        }
        let a = ident(cur)?;
        cur.expect_sym(":")?;
        let ty = parse_type_in(cur)?;
        cur.expect_sym(".")?;
        return Ok(Term::mu(a, ty, term(cur)?));
    }
    if cur.eat_sym("[") {
        let a = ident(cur)?;
        if cur.eat_sym(",") {
            let b = ident(cur)?;
            cur.expect_sym("]")?;
            return Ok(Term::name2(a, b, term(cur)?));
        }
        cur.expect_sym("]")?;
        return Ok(Term::name(a, term(cur)?));
    }
    app(cur)
}

fn starts_atom(cur: &Cursor) -> bool {
    matches!(cur.peek(), Some(Tok::Ident(_))) || cur.at_sym("*") || cur.at_sym("(")
}

fn app(cur: &mut Cursor) -> Result<Term> {
    let mut t = if cur.eat_sym("pi1") {
        Term::proj(1, atom(cur)?)
    } else if cur.eat_sym("pi2") {
        Term::proj(2, atom(cur)?)
    } else {
        atom(cur)?
    };
    loop {
        if cur.eat_sym("{") {
            let ty = parse_type_in(cur)?;
            cur.expect_sym("}")?;
            t = Term::tapp(t, ty);
        } else if starts_atom(cur) {
            t = Term::app(t, atom(cur)?);
        } else {
            return Ok(t);
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<Term> {
    if cur.eat_sym("*") {
        return Ok(Term::Star);
    }
    if cur.eat_sym("(") {
        let a = term(cur)?;
        if cur.eat_sym(",") {
            let b = term(cur)?;
            cur.expect_sym(")")?;
            return Ok(Term::pair(a, b));
        }
        cur.expect_sym(")")?;
        return Ok(a);
    }
    match cur.peek() {
        Some(Tok::Ident(_)) => Ok(Term::Var(ident(cur)?)),
        _ => Err(cur.unexpected("expected a term")),
    }
}
