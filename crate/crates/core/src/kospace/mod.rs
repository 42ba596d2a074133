//! Ko-spaces, their duals and the relations between them.

mod crel;
mod space;
mod topo;

pub use crel::{iso_crelations, CRelation};
pub use space::{kospace_isomorphic, validate_kospace_alt, KoSpace};
pub use topo::{from_topspace, FinTopSpace};
