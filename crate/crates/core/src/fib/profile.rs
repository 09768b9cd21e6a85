use serde::Serialize;

use super::exponentiable::{is_conduche_certified, is_exponentiable_certified};
use super::lifting::*;
use super::{arrow_functor, Verdict, Witness};
use crate::constructions::{base_change, fiber};
use crate::error::{CatError, Result};
use crate::functor::Functor;
use crate::homology::{is_final, FinalityMode};

fn mode_of(certify_dim: Option<usize>) -> FinalityMode {
    certify_dim.map_or(FinalityMode::Pi0Exact, FinalityMode::Certified)
}

/// Strictly exponentiable (Conduché), and for every morphism `[1] → K` the
/// inclusion of the fiber over the target into the base change is final.
pub fn is_left_final(pi: &Functor, certify_dim: Option<usize>) -> Result<Verdict> {
    let exp = is_conduche_certified(pi, certify_dim)?;
    if let Some(w) = exp.witness {
        return Ok(Verdict::no(Witness::Requires {
            property: "Conduché".into(),
            inner: Box::new(w),
        }));
    }
    let kc = pi.target();
    for k in 0..kc.num_morphisms() {
        let bc = base_change(pi, &arrow_functor(kc, k));
        let top = fiber(&bc.right, 1);
        let v = is_final(&top.inclusion, mode_of(certify_dim))?;
        if let Some(bad) = v.witness() {
            return Ok(Verdict::no(Witness::NotFinal {
                base_morphism: kc.morphism_id(k).to_string(),
                object: bad.object.clone(),
            }));
        }
    }
    Ok(Verdict::yes())
}

/// The dual of [`is_left_final`]: fiber over the source, initiality.
pub fn is_right_initial(pi: &Functor, certify_dim: Option<usize>) -> Result<Verdict> {
    is_left_final(&pi.opposite(), certify_dim)
}

/// Verdicts for every fibration class, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationProfile {
    pub cartesian: Verdict,
    pub certify_dim: Option<usize>,
    pub cocartesian: Verdict,
    pub conservative: Verdict,
    pub discrete_fibration: Verdict,
    pub discrete_opfibration: Verdict,
    pub exponentiable: Verdict,
    pub left_fibration: Verdict,
    pub left_final: Verdict,
    pub locally_cartesian: Verdict,
    pub locally_cocartesian: Verdict,
    pub right_fibration: Verdict,
    pub right_initial: Verdict,
}

impl FibrationProfile {
    /// The profile of the opposite functor, obtained by swapping columns.
    pub fn dual(&self) -> FibrationProfile {
        FibrationProfile {
            cartesian: self.cocartesian.clone(),
            certify_dim: self.certify_dim,
            cocartesian: self.cartesian.clone(),
            conservative: self.conservative.clone(),
            discrete_fibration: self.discrete_opfibration.clone(),
            discrete_opfibration: self.discrete_fibration.clone(),
            exponentiable: self.exponentiable.clone(),
            left_fibration: self.right_fibration.clone(),
            left_final: self.right_initial.clone(),
            locally_cartesian: self.locally_cocartesian.clone(),
            locally_cocartesian: self.locally_cartesian.clone(),
            right_fibration: self.left_fibration.clone(),
            right_initial: self.left_final.clone(),
        }
    }

    /// `(name, holds)` for every class, in field order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("cartesian", self.cartesian.holds),
            ("cocartesian", self.cocartesian.holds),
            ("conservative", self.conservative.holds),
            ("discrete_fibration", self.discrete_fibration.holds),
            ("discrete_opfibration", self.discrete_opfibration.holds),
            ("exponentiable", self.exponentiable.holds),
            ("left_fibration", self.left_fibration.holds),
            ("left_final", self.left_final.holds),
            ("locally_cartesian", self.locally_cartesian.holds),
            ("locally_cocartesian", self.locally_cocartesian.holds),
            ("right_fibration", self.right_fibration.holds),
            ("right_initial", self.right_initial.holds),
        ]
    }
}

/// Every implication between classes that fails on `p`.
pub fn closure_violations(p: &FibrationProfile) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            out.push(name.to_string());
        }
    };
    for (side, q) in [("", p.clone()), ("dual ", p.dual())] {
        let imp = |a: bool, b: bool| !a || b;
        check(
            &format!("{side}left fibration implies coCartesian"),
            imp(q.left_fibration.holds, q.cocartesian.holds),
        );
        check(
            &format!("{side}coCartesian implies locally coCartesian"),
            imp(q.cocartesian.holds, q.locally_cocartesian.holds),
        );
        check(
            &format!("{side}coCartesian implies exponentiable"),
            imp(q.cocartesian.holds, q.exponentiable.holds),
        );
        check(
            &format!("{side}left fibration iff conservative and locally coCartesian"),
            q.left_fibration.holds == (q.conservative.holds && q.locally_cocartesian.holds),
        );
        check(
            &format!("{side}coCartesian implies left final"),
            imp(q.cocartesian.holds, q.left_final.holds),
        );
        check(
            &format!("{side}discrete opfibration implies left fibration"),
            imp(q.discrete_opfibration.holds, q.left_fibration.holds),
        );
    }
    out
}

/// Runs every checker on `pi` and asserts the implication closure.
pub fn classify(pi: &Functor, certify_dim: Option<usize>) -> Result<FibrationProfile> {
    let profile = FibrationProfile {
        cartesian: is_cartesian_fibration(pi),
        certify_dim,
        cocartesian: is_cocartesian_fibration(pi),
        conservative: is_conservative(pi),
        discrete_fibration: is_discrete_fibration(pi),
        discrete_opfibration: is_discrete_opfibration(pi),
        exponentiable: is_exponentiable_certified(pi, certify_dim)?,
        left_fibration: is_left_fibration(pi),
        left_final: is_left_final(pi, certify_dim)?,
        locally_cartesian: is_locally_cartesian(pi),
        locally_cocartesian: is_locally_cocartesian(pi),
        right_fibration: is_right_fibration(pi),
        right_initial: is_right_initial(pi, certify_dim)?,
    };
    let bad = closure_violations(&profile);
    if bad.is_empty() {
        Ok(profile)
    } else {
        Err(CatError::Internal(format!(
            "implication closure violated: {}",
            bad.join("; ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::constructions::{arrow_category, product};

    #[test]
    fn target_evaluation_profile() {
        let k = Arc::new(catalog::interval(2));
        let p = classify(&arrow_category(&k).ev_t, Some(2)).unwrap();
        assert!(p.cocartesian.holds && p.exponentiable.holds && p.left_final.holds);
        assert!(!p.left_fibration.holds && !p.discrete_opfibration.holds);
    }

    #[test]
    fn product_projection_profile() {
        let c = Arc::new(catalog::ret());
        let one = Arc::new(catalog::interval(1));
        let p = classify(&product(&c, &one).right, None).unwrap();
        for (name, holds) in p.flags() {
            let discrete =
                name.contains("discrete") || name.ends_with("_fibration") || name == "conservative";
            assert_eq!(holds, !discrete, "{name}");
        }
    }

    #[test]
    fn duality_swaps_columns() {
        let k = Arc::new(catalog::interval(2));
        let ev = arrow_category(&k).ev_t;
        let p = classify(&ev, None).unwrap();
        let q = classify(&ev.opposite(), None).unwrap();
        let strip = |p: &FibrationProfile| p.flags();
        assert_eq!(strip(&q), strip(&p.dual()));
    }
}
