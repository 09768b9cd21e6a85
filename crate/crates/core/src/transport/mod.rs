//! Replacement and (un)straightening constructions.

mod functors;
mod grothendieck;
mod kan;
mod pushforward;
mod replacement;

pub use functors::{
    enumerate_set_functors, find_natural_iso, CatValuedFunctor, NaturalIso, SetValuedFunctor,
};
pub use grothendieck::{
    straighten_cocart, straighten_discrete_opfib, unstraighten, unstraighten_cat, ChosenLift,
    CleavageReport, Comparison, ElementsCategory, GrothendieckConstruction, Straightening,
};
pub use kan::{kan_extend_along_fibration, kan_extension_by_commas, KanDirection};
pub use pushforward::{
    pushforward_adjunction, pushforward_exponentiable, AdjunctionCheck, Pushforward,
};
pub use replacement::{
    cart_replacement, cocart_replacement, lfib_replacement, lfib_universal_property,
    maximal_left_subfibration, maximal_right_subfibration, relative_classifying_space,
    rfib_replacement, CocartReplacement, FibrationReplacement, RelativeClassifyingSpace,
    Subfibration, UniversalPropertyCheck,
};
