//! Local compactness, bicontinuity and the results built on them.

mod dirspace;
mod frame;
mod lc;

pub use dirspace::Dirspace;
pub use frame::{finite_frame_pipeline, FramePipelineReport, FramePoint};
pub use lc::{
    black_triangle, check_bicontinuous, check_locally_compact, interpolated_below, way_below, way_below_set, LCReport,
    LcWitness, LocalCompactness,
};
mod transfer;

pub use transfer::{
    check_meets_joins_transfer, distributivity_from, has_binary_joins, has_binary_meets, has_finite_joins, has_finite_meets,
    hofmann_mislove, k_closed_under_finite_joins, k_closed_under_finite_meets, k_closed_under_intersections,
    k_closed_under_unions, o_closed_under_finite_joins, o_closed_under_finite_meets, o_closed_under_intersections,
    o_closed_under_unions, wilker_bidcpo, wilker_kospace, HofMisReport, MeetsJoins, Side, Variant,
};
