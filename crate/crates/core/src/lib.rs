//! Finite duality workbench: ko-spaces, bi-dcpos and embedded bi-dcpos, the
//! correspondences between them, their morphisms, and the local compactness
//! toolkit, all on explicit finite structures.

pub mod bidcpo;
pub mod bitset;
pub mod catalog;
pub mod equivalence;
pub mod gen;
pub mod error;
pub mod guard;
pub mod io;
pub mod kospace;
pub mod localcompact;
pub mod order;
pub mod par;
pub mod polarity;
pub mod sweep;

pub use bitset::BitSet;
pub use error::{Code, Diagnostic, Error, Result};
