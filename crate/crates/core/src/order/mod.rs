//! Finite posets, upsets and filters, lattices, weakening relations and
//! isomorphism search.

mod iso;
mod lattice;
mod poset;
pub(crate) mod subfam;
mod weakrel;

pub use iso::{find_isomorphism, poset_isomorphic, Structure};
pub use lattice::{upset_lattice, FinLattice, UpsetLattice};
pub use poset::{numbered, set_name, FinPoset, MonotoneMap};
pub(crate) use poset::{set_names, sort_names};
pub use weakrel::WeakRel;

/// Order-isomorphism between two lattices.
pub fn lattice_isomorphic(a: &FinLattice, b: &FinLattice) -> Option<Vec<usize>> {
    poset_isomorphic(a.poset(), b.poset())
}
