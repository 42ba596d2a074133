//! Polarities, concept lattices, double base lattices and the two kinds of
//! Galois morphisms between them.

mod concept;
mod dbl;
mod galois;
mod relation;

pub use concept::{concept_lattice, Concept, ConceptLattice};
pub use dbl::{dbl_isomorphic, fca_isomorphism, to_double_base, to_double_base_with, DoubleBaseLattice};
pub use galois::{
    all_galois_morphisms, embedded_to_galois, galois_embedded_roundtrip, galois_to_embedded, EmbeddedGaloisMorphism,
    GaloisMorphism,
};
pub use relation::{polarity_isomorphic, Polarity};
