//! Nerves, integral homology and finality.

mod chain;
mod finality;
mod laws;
mod nerve;
pub mod smith;

pub use chain::{
    chain_complex, homology, induces_homology_iso, ChainComplex, HomologyGroup, HomologyReport,
};
pub use finality::{
    is_connected, is_final, is_initial, pi0, pi0_square, relabel_classes, slice_transition,
    theorem_b_hypothesis, CommaCheck, Components, FinalityMode, FinalityVerdict, Pi0Square,
    TheoremBHypothesis,
};
pub use laws::{
    check_final_closure, colimit_oracle, preserves_colimit, set_colimit, ColimitOracle, LawReport,
    SetColimit,
};
pub use nerve::{chains, nerve, nerve_capped, TruncatedNerve};
