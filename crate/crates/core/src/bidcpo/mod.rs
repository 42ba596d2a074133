//! Bi-dcpos, embedded bi-dcpos, distributivity, ⤢ pairs and completely prime pairs.

mod dcpo;
mod filters;
mod pairs;

pub use dcpo::{is_distributive_embedded, validate_bidcpo, BiDcpo, EmbeddedBiDcpo, Quadruple};
pub use filters::{filter_distributivity_criterion, filter_polarity, filter_separation_witness, from_dcpo_filters};
pub(crate) use pairs::cp_with;
pub use pairs::{
    bifounded_witness, bifounded_witness_lattice, cp_pairs, cp_pairs_lattice, is_bifounded, is_bifounded_lattice,
    is_raney, key_lemma_check, neswarrow_pairs, neswarrow_pairs_lattice, raney_witness,
};
