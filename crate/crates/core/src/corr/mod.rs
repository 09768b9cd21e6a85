//! Correspondences in three presentations: categories over the 1-cell,
//! two-sided discrete fibrations, and profunctors, with conversions and
//! composition along each.

mod bifib;
mod compose;
mod correspondence;
mod profunctor;
mod roundtrip;

pub use bifib::{
    bifib_to_corr, bifib_to_profunctor, corr_to_bifib, profunctor_to_bifib,
    TwoSidedDiscreteFibration,
};
pub use compose::{
    associator, coend, compose_bifib, compose_corr, compose_prof, glue_over_triangle, left_unitor,
    right_unitor, route_coherence, triangle_category, Coend, OverTriangle, RouteCoherence,
};
pub use correspondence::{
    collage, corr_to_profunctor, find_corr_isomorphism, is_left_final_corr, is_right_initial_corr,
    product_corr, Correspondence,
};
pub use profunctor::{
    find_profunctor_iso, hom_profunctor, idem_ret_bimodules, Profunctor, ProfunctorIso,
};
pub use roundtrip::{
    equivalence_triangle, triangle_from_corr, triangle_from_profunctor, RoundTrip, TriangleReport,
};
