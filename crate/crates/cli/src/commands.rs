use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use fibcat_core::catalog;
use fibcat_core::corr::{
    compose_bifib, compose_corr, compose_prof, corr_to_profunctor, find_profunctor_iso,
    hom_profunctor, profunctor_to_bifib, route_coherence, triangle_from_corr,
};
use fibcat_core::fib::{
    classify, is_cartesian_fibration, is_cocartesian_fibration, is_left_fibration,
    is_right_fibration,
};
use fibcat_core::homology::{homology, is_final, is_initial, FinalityMode};
use fibcat_core::io::{
    correspondence_from_json, functor_from_json, parse_json, profunctor_from_json,
    CategoryDocument, CorrespondenceDocument, DocError, FunctorDocument, FunctorMaps,
    ProfunctorDocument,
};
use fibcat_core::search::FunctorSearch;
use fibcat_core::suite::{run_suite, SuiteReport};
use fibcat_core::transport::{
    cart_replacement, cocart_replacement, enumerate_set_functors, lfib_replacement,
    lfib_universal_property, pushforward_adjunction, pushforward_exponentiable, rfib_replacement,
    unstraighten,
};
use fibcat_core::{CatError, Correspondence, FiniteCategory, Functor, Profunctor};

use crate::{CliError, ComposeMode, ReplaceKind};

/// A command's report body plus an optional standalone document for `--out`.
pub struct Outcome {
    pub report: Value,
    pub document: Option<Value>,
    /// Set when the command ran but found property violations.
    pub failed: Option<String>,
}

impl Outcome {
    fn report(report: impl Serialize) -> Self {
        Outcome {
            report: to_value(report),
            document: None,
            failed: None,
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(DocError) -> CliError + '_ {
    move |e| CliError {
        code: e.exit_code(),
        message: format!("{}: {e}", path.display()),
    }
}

pub fn load_functor(path: &Path) -> Result<Functor, CliError> {
    functor_from_json(&read(path)?).map_err(in_file(path))
}

pub fn load_profunctor(path: &Path) -> Result<Profunctor, CliError> {
    profunctor_from_json(&read(path)?).map_err(in_file(path))
}

pub fn load_correspondence(path: &Path) -> Result<Correspondence, CliError> {
    correspondence_from_json(&read(path)?).map_err(in_file(path))
}

pub fn load_category(path: &Path) -> Result<Arc<FiniteCategory>, CliError> {
    parse_json::<CategoryDocument>(&read(path)?)
        .and_then(|d| d.to_valid_category("category"))
        .map_err(in_file(path))
}

fn mode(certify_dim: Option<usize>) -> FinalityMode {
    certify_dim.map_or(FinalityMode::Pi0Exact, FinalityMode::Certified)
}

pub fn classify_cmd(functor: &Path, certify_dim: Option<usize>) -> Result<Outcome, CliError> {
    Ok(Outcome::report(classify(
        &load_functor(functor)?,
        certify_dim,
    )?))
}

pub fn finality_cmd(
    functor: &Path,
    certify_dim: Option<usize>,
    initial: bool,
) -> Result<Outcome, CliError> {
    let f = load_functor(functor)?;
    let v = if initial {
        is_initial(&f, mode(certify_dim))?
    } else {
        is_final(&f, mode(certify_dim))?
    };
    Ok(Outcome::report(v))
}

pub fn homology_cmd(category: &Path, max_dim: usize) -> Result<Outcome, CliError> {
    Ok(Outcome::report(homology(
        &*load_category(category)?,
        max_dim,
    )?))
}

pub fn roundtrip_cmd(corr: &Path) -> Result<Outcome, CliError> {
    let report = triangle_from_corr(&load_correspondence(corr)?)?;
    let failed = (!report.all_hold()).then(|| "a round trip failed".to_string());
    Ok(Outcome {
        report: to_value(&report),
        document: None,
        failed,
    })
}

pub fn compose_cmd(mode: ComposeMode, a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let (p, q, composite) = match mode {
        ComposeMode::Corr => {
            let (c, d) = (load_correspondence(a)?, load_correspondence(b)?);
            let composite = to_value(CorrespondenceDocument::from_correspondence(&compose_corr(
                &c, &d,
            )?));
            (corr_to_profunctor(&c), corr_to_profunctor(&d), composite)
        }
        ComposeMode::Prof => {
            let (p, q) = (load_profunctor(a)?, load_profunctor(b)?);
            let composite = to_value(ProfunctorDocument::from_profunctor(&compose_prof(&p, &q)?));
            (p, q, composite)
        }
        ComposeMode::Bifib => {
            let (p, q) = (load_profunctor(a)?, load_profunctor(b)?);
            let x = compose_bifib(&profunctor_to_bifib(&p), &profunctor_to_bifib(&q))?;
            (p, q, to_value(FunctorDocument::from_functor(&x.projection)))
        }
    };
    let routes = route_coherence(&p, &q)?;
    let c = &routes.composite;
    let identity_bimodule = (c.source() == c.target())
        .then(|| find_profunctor_iso(c, &hom_profunctor(c.source())).is_some());
    let report = json!({
        "mode": mode.name(),
        "composite": composite,
        "route_coherence": {
            "corr_route": routes.corr_route,
            "bifib_route": routes.bifib_route,
            "holds": routes.holds(),
        },
        "identity_bimodule": identity_bimodule,
    });
    let failed = (!routes.holds()).then(|| "composition routes disagree".to_string());
    Ok(Outcome {
        report,
        document: Some(composite),
        failed,
    })
}

pub fn replace_cmd(kind: ReplaceKind, functor: &Path) -> Result<Outcome, CliError> {
    let pi = load_functor(functor)?;
    let (projection, unit, checks) = match kind {
        ReplaceKind::Cocart | ReplaceKind::Cart => {
            let cocart = matches!(kind, ReplaceKind::Cocart);
            let r = if cocart {
                cocart_replacement(&pi)?
            } else {
                cart_replacement(&pi)?
            };
            let fibration = if cocart {
                is_cocartesian_fibration(&r.projection)
            } else {
                is_cartesian_fibration(&r.projection)
            };
            let input_is = if cocart {
                is_cocartesian_fibration(&pi)
            } else {
                is_cartesian_fibration(&pi)
            };
            let checks = json!({
                "replacement_is_fibration": fibration.holds,
                "unit_fully_faithful": r.unit.is_fully_faithful(),
                "unit_over_base": r.unit.then(&r.projection).morphism_map() == pi.morphism_map(),
                "input_is_fibration": input_is.holds,
                "unit_has_adjoint": r.adjunction.is_some(),
            });
            (r.projection, r.unit, checks)
        }
        ReplaceKind::Lfib | ReplaceKind::Rfib => {
            let left = matches!(kind, ReplaceKind::Lfib);
            // the universal property of the right replacement is the left one for π^op
            let probe = if left { pi.clone() } else { pi.opposite() };
            let lr = lfib_replacement(&probe);
            let targets = enumerate_set_functors(probe.target(), 2)?;
            let mut bijective = 0;
            let mut failures = Vec::new();
            for (i, f) in targets.iter().enumerate() {
                let check = lfib_universal_property(&probe, &lr, &unstraighten(f).projection)?;
                if check.bijective {
                    bijective += 1;
                } else {
                    failures.push(i);
                }
            }
            let r = if left { lr } else { rfib_replacement(&pi) };
            let fibration = if left {
                is_left_fibration(&r.total.projection)
            } else {
                is_right_fibration(&r.total.projection)
            };
            let checks = json!({
                "replacement_is_fibration": fibration.holds,
                "unit_over_base": r.unit.then(&r.total.projection).morphism_map() == pi.morphism_map(),
                "discrete_targets": targets.len(),
                "universal_property_bijective": bijective,
                "universal_property_failures": failures,
            });
            (r.total.projection, r.unit, checks)
        }
    };
    let document = to_value(FunctorDocument::from_functor(&projection));
    let holds = checks.as_object().is_some_and(|m| {
        m.get("replacement_is_fibration") == Some(&Value::Bool(true))
            && m.get("unit_over_base") == Some(&Value::Bool(true))
            && m.get("universal_property_failures")
                .is_none_or(|f| f.as_array().is_some_and(Vec::is_empty))
    });
    let report = json!({
        "kind": kind.name(),
        "replacement": document,
        "unit": FunctorMaps::from_functor(&unit),
        "checks": checks,
    });
    let failed = (!holds).then(|| "replacement failed its spot check".to_string());
    Ok(Outcome {
        report,
        document: Some(document),
        failed,
    })
}

pub fn pushforward_cmd(fibration: &Path, over: &Path) -> Result<Outcome, CliError> {
    let pi = load_functor(fibration)?;
    let zeta = load_functor(over)?;
    let push = pushforward_exponentiable(&pi, &zeta)?;
    let mut probes = 0;
    let mut failures = Vec::new();
    for (name, j) in catalog::small_corpus() {
        let j = Arc::new(j);
        for (k, p) in FunctorSearch::new(&j, pi.target())
            .collect()?
            .iter()
            .enumerate()
        {
            probes += 1;
            let check = pushforward_adjunction(&push, &pi, &zeta, p)?;
            if !check.bijective {
                failures.push(format!(
                    "{name} #{k}: {} vs {}",
                    check.into_pushforward, check.from_pullback
                ));
            }
        }
    }
    let document = to_value(FunctorDocument::from_functor(&push.projection));
    let report = json!({
        "pushforward": document,
        "adjunction": { "probes": probes, "failures": failures },
    });
    let failed = (!failures.is_empty()).then(|| "adjunction spot check failed".to_string());
    Ok(Outcome {
        report,
        document: Some(document),
        failed,
    })
}

pub fn suite_cmd(seed: u64, size: usize, artifacts: &Path) -> Result<Outcome, CliError> {
    let report: SuiteReport = run_suite(seed, size)?;
    let mut written = Vec::new();
    for fam in &report.families {
        for f in &fam.failures {
            let dir = artifacts.join(&fam.family);
            std::fs::create_dir_all(&dir)
                .map_err(|e| CliError::internal(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{:04}.json", f.instance));
            let body = json!({
                "family": fam.family,
                "instance": f.instance,
                "seed": f.seed,
                "detail": f.detail,
                "reproduce": format!("fibcat suite --seed {} --size {}", report.seed, report.size),
            });
            std::fs::write(&path, fibcat_core::io::to_canonical_json(&body))
                .map_err(|e| CliError::internal(format!("{}: {e}", path.display())))?;
            written.push(path.display().to_string());
        }
    }
    let failed = (!report.passed()).then(|| format!("{} failure artifacts written", written.len()));
    let mut value = to_value(&report);
    value["passed"] = Value::Bool(report.passed());
    value["artifacts"] = to_value(&written);
    Ok(Outcome {
        report: value,
        document: None,
        failed,
    })
}

#[derive(Clone, Copy)]
pub enum DocKind {
    Category,
    Functor,
    Profunctor,
    Correspondence,
}

/// Parses and validates a document, reporting its size.
pub fn validate_cmd(kind: DocKind, path: &Path) -> Result<Outcome, CliError> {
    let report = match kind {
        DocKind::Category => {
            let c = load_category(path)?;
            json!({ "kind": "category", "objects": c.num_objects(), "morphisms": c.num_morphisms() })
        }
        DocKind::Functor => {
            let f = load_functor(path)?;
            json!({ "kind": "functor", "source_morphisms": f.source().num_morphisms(), "target_morphisms": f.target().num_morphisms() })
        }
        DocKind::Profunctor => {
            let p = load_profunctor(path)?;
            json!({ "kind": "profunctor", "elements": p.total_size() })
        }
        DocKind::Correspondence => {
            let c = load_correspondence(path)?;
            json!({ "kind": "correspondence", "total_morphisms": c.total.num_morphisms() })
        }
    };
    Ok(Outcome::report(report))
}

impl From<CatError> for CliError {
    fn from(e: CatError) -> Self {
        CliError {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}
