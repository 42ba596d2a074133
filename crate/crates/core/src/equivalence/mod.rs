//! Object and morphism correspondences between ko-spaces, bi-dcpos and
//! embedded bi-dcpos, with the de Groot and Lawson dualities.

mod morphisms;
mod objects;
mod raney;

pub use morphisms::{
    adjoint_to_relation, crelation_roundtrip, crelation_to_galois, galois_roundtrip, galois_to_crelation, lawson_dual,
    lawson_dual_morphism, preservation_witness, relation_to_adjoint, scott_fn_to_galois, scott_polarity, AdjointPair,
};
pub use objects::{
    bidcpo_to_embedded, bidcpo_to_kospace, bidcpo_to_kospace_full, embedded_to_bidcpo, embedded_to_kospace,
    kospace_to_bidcpo, kospace_to_bidcpo_full, kospace_to_embedded, point_iso, BiDcpoSpace, SpaceBiDcpo,
};
pub use raney::{cp_poset, raney_lattice_roundtrip, raney_poset_roundtrip, RaneyLatticeReport, RaneyPosetReport};
