//! Named example documents. The files under `corpus/` are these, emitted
//! canonically; a test keeps the two in sync.

use std::sync::Arc;

use fibcat_core::catalog;
use fibcat_core::constructions::{arrow_category, full_subcategory_arc};
use fibcat_core::corr::{collage, hom_profunctor, idem_ret_bimodules};
use fibcat_core::io::{
    category_to_json, correspondence_to_json, functor_to_json, profunctor_to_json,
};
use fibcat_core::{Correspondence, FiniteCategory, Functor};

pub const NAMES: &[&str] = &[
    "interval-0",
    "interval-1",
    "interval-2",
    "interval-3",
    "interval-4",
    "idem",
    "ret",
    "walking-iso",
    "z2",
    "parallel-pair",
    "arrow-2",
    "ends-in-2",
    "identity-ends-in-2",
    "ev-t-arrow-2",
    "identity-arrow-2",
    "hom-idem",
    "hom-ret",
    "idem-ret-p",
    "idem-ret-q",
    "identity-corr-1",
    "collage-idem-ret-p",
    "collage-idem-ret-q",
];

fn ends_in_2() -> Functor {
    full_subcategory_arc(&Arc::new(catalog::interval(2)), &[0, 2]).inclusion
}

/// The canonical document for `name`, if it is one of [`NAMES`].
pub fn document(name: &str) -> Option<String> {
    let cat = |c: FiniteCategory| Some(category_to_json(&c));
    if let Some(n) = name.strip_prefix("interval-") {
        return match n.parse::<usize>() {
            Ok(n) if n <= 4 => cat(catalog::interval(n)),
            _ => None,
        };
    }
    let (p, q) = idem_ret_bimodules();
    match name {
        "idem" => cat(catalog::idem()),
        "ret" => cat(catalog::ret()),
        "walking-iso" => cat(catalog::walking_iso()),
        "z2" => cat(catalog::cyclic_group(2)),
        "parallel-pair" => cat(catalog::parallel_pair()),
        "arrow-2" => cat(arrow_category(&Arc::new(catalog::interval(2)))
            .category
            .as_ref()
            .clone()),
        "ends-in-2" => Some(functor_to_json(&ends_in_2())),
        "identity-ends-in-2" => Some(functor_to_json(&Functor::identity(
            ends_in_2().source().clone(),
        ))),
        "ev-t-arrow-2" => Some(functor_to_json(
            &arrow_category(&Arc::new(catalog::interval(2))).ev_t,
        )),
        "identity-arrow-2" => Some(functor_to_json(&Functor::identity(
            arrow_category(&Arc::new(catalog::interval(2))).category,
        ))),
        "hom-idem" => Some(profunctor_to_json(&hom_profunctor(&Arc::new(
            catalog::idem(),
        )))),
        "hom-ret" => Some(profunctor_to_json(&hom_profunctor(&Arc::new(
            catalog::ret(),
        )))),
        "idem-ret-p" => Some(profunctor_to_json(&p)),
        "idem-ret-q" => Some(profunctor_to_json(&q)),
        "identity-corr-1" => Some(correspondence_to_json(&Correspondence::identity(
            &Arc::new(catalog::interval(1)),
        ))),
        "collage-idem-ret-p" => Some(correspondence_to_json(&collage(&p))),
        "collage-idem-ret-q" => Some(correspondence_to_json(&collage(&q))),
        _ => None,
    }
}
