pub mod error;
pub mod ident;
mod syntax;
pub mod types;
pub mod arena;
pub mod canon;
pub mod iso;
pub mod lambdamu;
pub mod witness;
pub mod toolkit;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use ident::Ident;
pub use types::{CalculusMode, TypeExpr, VarContext};
