//! Library search up to isomorphism, and the pieces the command line needs.

mod index;

pub use index::{
    index_build, index_query, read_signature_list, signature_key, IndexEntry, IndexFile, SourceEntry, FORMAT, VERSION,
};
