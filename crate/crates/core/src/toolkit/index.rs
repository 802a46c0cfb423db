//! A signature index searchable up to isomorphism.
//!
//! On disk: one JSON header line, then one JSON record per entry, sorted by
//! hex key and then by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, canonicalize};
use crate::error::{Error, Result};
use crate::iso::decide_iso;
use crate::types::{parse_type, print_type, CalculusMode, TypeExpr};

pub const FORMAT: &str = "typeiso-index";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexEntry {
    pub name: String,
    pub signature: TypeExpr,
    pub mode: CalculusMode,
    pub key: Vec<u8>,
    /// Where the entry came from, e.g. `lib.sig:12`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFile {
    pub version: u32,
    pub mode: CalculusMode,
    pub entries: Vec<IndexEntry>,
}

/// One input line before canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceEntry {
    pub name: String,
    pub signature: String,
    pub source: String,
}

impl SourceEntry {
    pub fn new(name: impl Into<String>, signature: impl Into<String>) -> SourceEntry {
        SourceEntry { name: name.into(), signature: signature.into(), source: String::new() }
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    mode: String,
}

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    name: String,
    signature: String,
    source: String,
}

pub fn signature_key(t: &TypeExpr, mode: CalculusMode) -> Result<Vec<u8>> {
    mode.check_type(t)?;
    Ok(canonical_key(&canonicalize(t, mode)?.0))
}

/// Reads `name : signature` lines. Blank lines and `#` comments are
/// skipped; `origin` prefixes the recorded line numbers.
pub fn read_signature_list(text: &str, origin: &str) -> Result<Vec<SourceEntry>> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once(':') {
            Some((name, sig)) if !name.trim().is_empty() => out.push(SourceEntry {
                name: name.trim().to_string(),
                signature: sig.trim().to_string(),
                source: format!("{origin}:{}", i + 1),
            }),
            _ => bad.push(format!("{origin}:{}: expected `name : signature`", i + 1)),
        }
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(Error::Index(bad.join("; ")))
    }
}

/// Canonicalizes every entry and sorts by key. Any bad entry rejects the
/// whole build, and all problems are reported together.
pub fn index_build(entries: &[SourceEntry], mode: CalculusMode) -> Result<IndexFile> {
    let mut seen: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        seen.entry(e.name.as_str()).or_default().push(location(e, i));
    }
    let dups: Vec<String> = seen
        .iter()
        .filter(|(_, at)| at.len() > 1)
        .map(|(name, at)| format!("{name} ({})", at.join(", ")))
        .collect();
    if !dups.is_empty() {
        return Err(Error::DuplicateEntries(dups.join(", ")));
    }

    let mut out = Vec::with_capacity(entries.len());
    let mut bad = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        match parse_type(&e.signature, mode).and_then(|t| Ok((signature_key(&t, mode)?, t))) {
            Ok((key, signature)) => out.push(IndexEntry {
                name: e.name.clone(),
                signature,
                mode,
                key,
                source: e.source.clone(),
            }),
            Err(err) => bad.push(format!("{}: {err}", location(e, i))),
        }
    }
    if !bad.is_empty() {
        return Err(Error::Index(bad.join("; ")));
    }
    out.sort_by(|a, b| (&a.key, &a.name).cmp(&(&b.key, &b.name)));
    Ok(IndexFile { version: VERSION, mode, entries: out })
}

fn location(e: &SourceEntry, i: usize) -> String {
    if e.source.is_empty() {
        format!("entry {}", i + 1)
    } else {
        e.source.clone()
    }
}

/// Entries isomorphic to `q`. Keys only narrow the search; every hit is
/// confirmed by [`decide_iso`].
pub fn index_query<'a>(q: &TypeExpr, idx: &'a IndexFile) -> Result<Vec<&'a IndexEntry>> {
    let key = signature_key(q, idx.mode)?;
    let lo = idx.entries.partition_point(|e| e.key < key);
    let hi = idx.entries.partition_point(|e| e.key <= key);
    let mut out = Vec::new();
    for e in &idx.entries[lo..hi] {
        if decide_iso(q, &e.signature, idx.mode)?.isomorphic {
            out.push(e);
        }
    }
    Ok(out)
}

impl IndexFile {
    pub fn to_text(&self) -> String {
        let header = Header { format: FORMAT.into(), version: self.version, mode: self.mode.short_name().into() };
        let mut s = serde_json::to_string(&header).expect("header serializes");
        s.push('\n');
        for e in &self.entries {
            let r = Record {
                key: hex::encode(&e.key),
                name: e.name.clone(),
                signature: print_type(&e.signature),
                source: e.source.clone(),
            };
            s.push_str(&serde_json::to_string(&r).expect("record serializes"));
            s.push('\n');
        }
        s
    }

    /// Parses and validates a file: the header, key order, and that every
    /// key matches its signature under the header mode.
    pub fn from_text(text: &str) -> Result<IndexFile> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::Index("empty index file".into()))?;
        let header: Header =
            serde_json::from_str(first).map_err(|e| Error::Index(format!("line 1: bad header: {e}")))?;
        if header.format != FORMAT {
            return Err(Error::Index(format!("line 1: not an index file (format {:?})", header.format)));
        }
        if header.version != VERSION {
            return Err(Error::Index(format!("line 1: unsupported version {}", header.version)));
        }
        let mode = CalculusMode::from_short_name(&header.mode)
            .ok_or_else(|| Error::Index(format!("line 1: unknown calculus {:?}", header.mode)))?;
        let mut entries: Vec<IndexEntry> = Vec::new();
        for (i, line) in lines {
            let at = |msg: String| Error::Index(format!("line {}: {msg}", i + 1));
            let r: Record = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
            let key = hex::decode(&r.key).map_err(|e| at(format!("bad key: {e}")))?;
            let signature = parse_type(&r.signature, mode).map_err(|e| at(e.to_string()))?;
            if signature_key(&signature, mode)? != key {
                return Err(at(format!("key does not match the signature of {}", r.name)));
            }
            if let Some(prev) = entries.last() {
                if (&prev.key, &prev.name) >= (&key, &r.name) {
                    return Err(at("entries out of order".into()));
                }
            }
            entries.push(IndexEntry { name: r.name, signature, mode, key, source: r.source });
        }
        Ok(IndexFile { version: header.version, mode, entries })
    }
}
