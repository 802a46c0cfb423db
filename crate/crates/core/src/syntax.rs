//! Tokenizer shared by the type and term parsers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Punctuation and keywords, normalized to their ASCII spelling.
    Sym(&'static str),
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

const KEYWORDS: &[&str] = &["forall", "T", "lam", "mu", "Lam", "pi1", "pi2"];

const SYMBOLS: &[(&str, &str)] = &[
    ("->", "->"),
    ("/\\", "/\\"),
    ("_|_", "_|_"),
    ("*", "*"),
    ("(", "("),
    (")", ")"),
    ("[", "["),
    ("]", "]"),
    ("{", "{"),
    ("}", "}"),
    (".", "."),
    (",", ","),
    (":", ":"),
    ("∀", "forall"),
    ("→", "->"),
    ("×", "*"),
    ("⅋", "/\\"),
    ("⊤", "T"),
    ("⊥", "_|_"),
    ("λ", "lam"),
    ("μ", "mu"),
    ("Λ", "Lam"),
    ("⋆", "*"),
];

fn keyword(word: &str) -> Option<&'static str> {
    KEYWORDS.iter().copied().find(|k| *k == word)
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if is_ident_start(c) {
            let len = rest
                .char_indices()
                .find(|&(_, c)| !is_ident_char(c))
                .map_or(rest.len(), |(n, _)| n);
            let word = &rest[..len];
            let tok = match keyword(word) {
                Some(k) => Tok::Sym(k),
                None => Tok::Ident(word.to_string()),
            };
            out.push(Token { tok, pos: i });
            i += len;
            continue;
        }
        for (text, sym) in SYMBOLS {
            if rest.starts_with(text) {
                out.push(Token {
                    tok: Tok::Sym(sym),
                    pos: i,
                });
                i += text.len();
                continue 'outer;
            }
        }
        return Err(Error::syntax(i, format!("unexpected character {c:?}")));
    }
    Ok(out)
}

/// A position in a token stream.
pub struct Cursor<'a> {
    toks: &'a [Token],
    idx: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], src_len: usize) -> Self {
        Cursor {
            toks,
            idx: 0,
            end: src_len,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.idx).map(|t| &t.tok)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |t| t.pos)
    }

    pub fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.idx).map(|t| &t.tok);
        self.idx += 1;
        t
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{s}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                Ok(name.clone())
            }
            _ => Err(self.unexpected("expected identifier")),
        }
    }

    pub fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    pub fn unexpected(&self, what: &str) -> Error {
        match self.peek() {
            Some(Tok::Ident(name)) => Error::syntax(self.pos(), format!("{what}, found `{name}`")),
            Some(Tok::Sym(s)) => Error::syntax(self.pos(), format!("{what}, found `{s}`")),
            None => Error::syntax(self.pos(), format!("{what}, found end of input")),
        }
    }
}
