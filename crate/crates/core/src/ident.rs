//! Interned identifiers shared by type variables, term variables and names.
//!
//! Every identifier is mapped to a positive index, so the interner doubles as
//! the bijection between variable names and `ℕ∖{0}` used by arena node names.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

#[derive(Default)]
struct Interner {
    names: Vec<Box<str>>,
    ids: HashMap<Box<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// An interned identifier. Cheap to copy, compare and hash.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ident(u32);

impl Ident {
    pub fn new(name: &str) -> Ident {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Ident(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Ident(id);
        }
        let id = table.names.len() as u32;
        table.names.push(name.into());
        table.ids.insert(name.into(), id);
        Ident(id)
    }

    pub fn name(self) -> String {
        interner().read().unwrap().names[self.0 as usize].to_string()
    }

    /// Positive index of this identifier (`X_i` has index `i`).
    pub fn index(self) -> u32 {
        self.0 + 1
    }

    /// A variant of `self` for which `taken` answers false. Deterministic:
    /// tries `x1`, `x2`, ... after stripping a trailing numeric suffix.
    pub fn fresh(self, mut taken: impl FnMut(Ident) -> bool) -> Ident {
        if !taken(self) {
            return self;
        }
        let name = self.name();
        let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "v" } else { stem };
        (1u64..)
            .map(|i| Ident::new(&format!("{stem}{i}")))
            .find(|&id| !taken(id))
            .expect("identifier space exhausted")
    }
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        let table = interner().read().unwrap();
        table.names[self.0 as usize].cmp(&table.names[other.0 as usize])
    }
}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&interner().read().unwrap().names[self.0 as usize])
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Ident {
        Ident::new(s)
    }
}
