//! Decision procedures for fibration classes, with witnesses.

mod adjoint;
mod exponentiable;
mod lifting;
pub mod menus;
mod profile;
mod sections;

use std::sync::Arc;

use serde::Serialize;

use crate::catalog;
use crate::category::FiniteCategory;
use crate::functor::Functor;

pub use adjoint::{
    final_objects, has_final_object, has_initial_object, initial_objects, is_left_adjoint,
    is_right_adjoint, Adjunction,
};
pub use exponentiable::{
    factorization_category, is_conduche, is_conduche_certified, is_exponentiable,
    is_exponentiable_certified, iso_replacement, FactorizationCategory,
};
pub use lifting::{
    cocartesian_flags, cocartesian_lifts, is_cartesian_fibration, is_cartesian_morphism,
    is_cocartesian_fibration, is_cocartesian_morphism, is_conservative, is_discrete_fibration,
    is_discrete_opfibration, is_left_fibration, is_locally_cartesian, is_locally_cocartesian,
    is_right_fibration,
};
pub use profile::{
    classify, closure_violations, is_left_final, is_right_initial, FibrationProfile,
};
pub use sections::{check_section_restriction, quillen_b_pi0_square, SectionRestriction};

/// A verdict with a counterexample when negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn no(w: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Counterexamples, named by ids of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// No morphism out of `object` lies over `base_morphism`.
    MissingLift {
        object: String,
        base_morphism: String,
    },
    /// Lifts exist but none of them is coCartesian.
    NoCocartesianLift {
        object: String,
        base_morphism: String,
        lifts: Vec<String>,
    },
    /// Several morphisms out of `object` lie over `base_morphism`.
    NonUniqueLift {
        object: String,
        base_morphism: String,
        lifts: Vec<String>,
    },
    /// `morphism` fails the coCartesian condition against `test` and the
    /// base factorization `factor`: `lifts` fillers exist instead of one.
    NotCocartesian {
        morphism: String,
        test: String,
        factor: String,
        lifts: usize,
    },
    /// `morphism` lies over an isomorphism but is not invertible.
    NotInvertible { morphism: String },
    /// The factorization category of `lift` through `(first, second)` is
    /// empty, disconnected or (when certified) not acyclic.
    Factorization {
        first: String,
        second: String,
        lift: String,
        objects: usize,
        components: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        homology_trivial: Option<bool>,
    },
    /// The base change over `base_morphism` fails with `inner`.
    OverMorphism {
        base_morphism: String,
        inner: Box<Witness>,
    },
    /// The fiber inclusion over `base_morphism` is not final at `object`.
    NotFinal {
        base_morphism: String,
        object: String,
    },
    /// The comma category under (or over) `object` has no initial (final)
    /// object.
    NoUniversalArrow { object: String },
    /// A precondition check failed first.
    Requires {
        property: String,
        inner: Box<Witness>,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| std::fmt::Error)?)
    }
}

/// The functor `[1] → K` selecting `k`.
pub fn arrow_functor(k_cat: &Arc<FiniteCategory>, k: usize) -> Functor {
    let one = Arc::new(catalog::interval(1));
    // interval(1) lists id_0, 0->1, id_1
    let (x, y) = (k_cat.src(k), k_cat.tgt(k));
    Functor::new_unchecked(
        one,
        k_cat.clone(),
        vec![x, y],
        vec![k_cat.identity(x), k, k_cat.identity(y)],
    )
}

/// The functor `[2] → K` selecting the composable pair `b ∘ a`.
pub fn triangle_functor(k_cat: &Arc<FiniteCategory>, a: usize, b: usize) -> Functor {
    let two = Arc::new(catalog::interval(2));
    // interval(2) lists id_0, 0->1, 0->2, id_1, 1->2, id_2
    let (x, y, z) = (k_cat.src(a), k_cat.tgt(a), k_cat.tgt(b));
    let m = vec![
        k_cat.identity(x),
        a,
        k_cat.compose(b, a),
        k_cat.identity(y),
        b,
        k_cat.identity(z),
    ];
    Functor::new_unchecked(two, k_cat.clone(), vec![x, y, z], m)
}
