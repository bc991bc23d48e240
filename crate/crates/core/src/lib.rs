//! Multiplicative c-differential and c-boomerang tables of p-ary functions
//! over small finite fields, with exhaustive checkers for their structural
//! properties.

pub mod atlas;
pub mod boomtables;
pub mod difftables;
pub mod error;
pub mod ffield;
pub mod funcspace;
pub mod tables;
pub mod theorems;
pub mod verdict;
pub mod walsh;

pub use error::{Error, Result};
pub use ffield::{Elem, Field, FieldElement, FieldSpec};
pub use funcspace::{Family, FunctionExpr, FunctionTable};
pub use tables::{CountTable, TableKind};
pub use verdict::TheoremVerdict;
