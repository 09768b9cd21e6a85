//! JSON documents for categories, functors, profunctors, correspondences and
//! reports.
//!
//! Every document carries `format_version`. Emission is canonical: object
//! keys sorted, two-space indentation, trailing newline, and lists in the
//! index order of the in-memory structure. Parsing is strict about unknown
//! fields and reports the offending field path with line and column.
//! Semantic checks (category axioms, functor laws) happen after parsing,
//! so a document with a missing composite parses and then fails validation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::category::{CategoryBuilder, FiniteCategory, ValidationReport};
use crate::corr::{Correspondence, Profunctor};
use crate::error::{exit, CatError};
use crate::functor::Functor;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{field}: {message} (line {line}, column {column})")]
    Schema {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Reference { field: String, message: String },
    #[error("unsupported format_version {found}; this build reads version {FORMAT_VERSION}")]
    Version { found: u32 },
    #[error("{field}: invalid category: {report}")]
    InvalidCategory {
        field: String,
        report: ValidationReport,
    },
    #[error("{field}: {source}")]
    Semantic { field: String, source: CatError },
}

impl DocError {
    pub fn exit_code(&self) -> i32 {
        match self {
            DocError::Schema { .. } | DocError::Reference { .. } | DocError::Version { .. } => {
                exit::PARSE
            }
            DocError::InvalidCategory { .. } => exit::VALIDATION,
            DocError::Semantic { source, .. } => source.exit_code(),
        }
    }

    fn reference(field: &str, message: impl Into<String>) -> Self {
        DocError::Reference {
            field: field.into(),
            message: message.into(),
        }
    }

    fn semantic(field: &str, source: CatError) -> Self {
        match source {
            CatError::UnknownObject(_)
            | CatError::UnknownMorphism(_)
            | CatError::DuplicateId(_)
            | CatError::Malformed(_) => DocError::reference(field, source.to_string()),
            source => DocError::Semantic {
                field: field.into(),
                source,
            },
        }
    }
}

pub type DocResult<T> = std::result::Result<T, DocError>;

/// Canonical JSON: sorted keys, pretty-printed, newline-terminated.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize to JSON");
    let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("JSON values print");
    s.push('\n');
    s
}

fn sort_keys(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<String, Value> =
                m.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sort_keys).collect()),
        v => v,
    }
}

/// Deserializes `text`, naming the failing field path on schema errors.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> DocResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = match e.path().to_string() {
            p if p == "." => "document".to_string(),
            p => p,
        };
        let inner = e.into_inner();
        DocError::Schema {
            field,
            line: inner.line(),
            column: inner.column(),
            message: strip_position(&inner.to_string()),
        }
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn check_version(found: u32) -> DocResult<()> {
    if found == FORMAT_VERSION {
        Ok(())
    } else {
        Err(DocError::Version { found })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A composition table. `compose` lists `[g, f, g∘f]` once per composable
/// pair, in the order `f` major, `g` minor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub format_version: u32,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl CategoryDocument {
    pub fn from_category(c: &FiniteCategory) -> Self {
        CategoryDocument {
            format_version: FORMAT_VERSION,
            objects: c.objects().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismEntry {
                    id: m.id.clone(),
                    src: c.object_id(m.src).into(),
                    tgt: c.object_id(m.tgt).into(),
                })
                .collect(),
            identities: (0..c.num_objects())
                .map(|o| (c.object_id(o).into(), c.morphism_id(c.identity(o)).into()))
                .collect(),
            compose: c
                .table()
                .into_iter()
                .map(|(g, f, h)| {
                    [
                        c.morphism_id(g).into(),
                        c.morphism_id(f).into(),
                        c.morphism_id(h).into(),
                    ]
                })
                .collect(),
        }
    }

    /// Builds the table without checking the axioms; see
    /// [`FiniteCategory::validate`]. `field` prefixes diagnostics.
    pub fn to_category(&self, field: &str) -> DocResult<FiniteCategory> {
        check_version(self.format_version)?;
        let mut b = CategoryBuilder::new();
        for (i, o) in self.objects.iter().enumerate() {
            b.object(o.as_str())
                .map_err(|e| DocError::semantic(&format!("{field}.objects[{i}]"), e))?;
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            b.morphism(m.id.as_str(), &m.src, &m.tgt)
                .map_err(|e| DocError::semantic(&format!("{field}.morphisms[{i}]"), e))?;
        }
        for (o, m) in &self.identities {
            b.identity(o, m)
                .map_err(|e| DocError::semantic(&format!("{field}.identities.{o}"), e))?;
        }
        for (i, [g, f, h]) in self.compose.iter().enumerate() {
            b.compose(g, f, h)
                .map_err(|e| DocError::semantic(&format!("{field}.compose[{i}]"), e))?;
        }
        b.build()
            .map_err(|e| DocError::semantic(&format!("{field}.identities"), e))
    }

    /// [`Self::to_category`] followed by validation of every axiom.
    pub fn to_valid_category(&self, field: &str) -> DocResult<Arc<FiniteCategory>> {
        let c = self.to_category(field)?;
        let report = c.validate();
        if report.is_ok() {
            Ok(Arc::new(c))
        } else {
            Err(DocError::InvalidCategory {
                field: field.into(),
                report,
            })
        }
    }
}

/// Object and morphism assignments keyed by ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMaps {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorMaps {
    pub fn from_functor(f: &Functor) -> Self {
        let (s, t) = (f.source(), f.target());
        FunctorMaps {
            objects: (0..s.num_objects())
                .map(|o| (s.object_id(o).into(), t.object_id(f.ob(o)).into()))
                .collect(),
            morphisms: (0..s.num_morphisms())
                .map(|m| (s.morphism_id(m).into(), t.morphism_id(f.mor(m)).into()))
                .collect(),
        }
    }

    pub fn to_functor(
        &self,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        field: &str,
    ) -> DocResult<Functor> {
        let objects: Vec<(&str, &str)> = self
            .objects
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let morphisms: Vec<(&str, &str)> = self
            .morphisms
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        Functor::from_ids(source, target, &objects, &morphisms)
            .map_err(|e| DocError::semantic(field, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDocument {
    pub format_version: u32,
    pub source: CategoryDocument,
    pub target: CategoryDocument,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorDocument {
    pub fn from_functor(f: &Functor) -> Self {
        let maps = FunctorMaps::from_functor(f);
        FunctorDocument {
            format_version: FORMAT_VERSION,
            source: CategoryDocument::from_category(f.source()),
            target: CategoryDocument::from_category(f.target()),
            objects: maps.objects,
            morphisms: maps.morphisms,
        }
    }

    pub fn to_functor(&self) -> DocResult<Functor> {
        check_version(self.format_version)?;
        let s = self.source.to_valid_category("source")?;
        let t = self.target.to_valid_category("target")?;
        FunctorMaps {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
        .to_functor(s, t, "functor")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub source_object: String,
    pub target_object: String,
    pub elements: Vec<String>,
}

/// `P(α, b): P(tgt α, b) → P(src α, b)` sends `element` to `image`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftAction {
    pub morphism: String,
    pub target_object: String,
    pub element: String,
    pub image: String,
}

/// `P(a, β): P(a, src β) → P(a, tgt β)` sends `element` to `image`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightAction {
    pub morphism: String,
    pub source_object: String,
    pub element: String,
    pub image: String,
}

/// A profunctor `A^op × B → Set`. Element names must be unique within a
/// cell; cells that are not listed are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfunctorDocument {
    pub format_version: u32,
    pub source: CategoryDocument,
    pub target: CategoryDocument,
    pub cells: Vec<CellEntry>,
    pub left: Vec<LeftAction>,
    pub right: Vec<RightAction>,
}

impl ProfunctorDocument {
    pub fn from_profunctor(p: &Profunctor) -> Self {
        let (a, b) = (p.source(), p.target());
        let mut cells = Vec::new();
        for x in 0..a.num_objects() {
            for y in 0..b.num_objects() {
                if p.size(x, y) > 0 {
                    cells.push(CellEntry {
                        source_object: a.object_id(x).into(),
                        target_object: b.object_id(y).into(),
                        elements: p.elements(x, y).to_vec(),
                    });
                }
            }
        }
        let mut left = Vec::new();
        for al in 0..a.num_morphisms() {
            for y in 0..b.num_objects() {
                let (from, to) = (p.elements(a.tgt(al), y), p.elements(a.src(al), y));
                for (i, e) in from.iter().enumerate() {
                    left.push(LeftAction {
                        morphism: a.morphism_id(al).into(),
                        target_object: b.object_id(y).into(),
                        element: e.clone(),
                        image: to[p.act_left(al, y, i)].clone(),
                    });
                }
            }
        }
        let mut right = Vec::new();
        for be in 0..b.num_morphisms() {
            for x in 0..a.num_objects() {
                let (from, to) = (p.elements(x, b.src(be)), p.elements(x, b.tgt(be)));
                for (i, e) in from.iter().enumerate() {
                    right.push(RightAction {
                        morphism: b.morphism_id(be).into(),
                        source_object: a.object_id(x).into(),
                        element: e.clone(),
                        image: to[p.act_right(be, x, i)].clone(),
                    });
                }
            }
        }
        ProfunctorDocument {
            format_version: FORMAT_VERSION,
            source: CategoryDocument::from_category(a),
            target: CategoryDocument::from_category(b),
            cells,
            left,
            right,
        }
    }

    pub fn to_profunctor(&self) -> DocResult<Profunctor> {
        check_version(self.format_version)?;
        let a = self.source.to_valid_category("source")?;
        let b = self.target.to_valid_category("target")?;
        let nb = b.num_objects();
        let ob = |c: &FiniteCategory, id: &str, field: &str| {
            c.object_index(id).map_err(|e| DocError::semantic(field, e))
        };
        let mor = |c: &FiniteCategory, id: &str, field: &str| {
            c.morphism_index(id)
                .map_err(|e| DocError::semantic(field, e))
        };
        let mut elements: Vec<Option<Vec<String>>> = vec![None; a.num_objects() * nb];
        for (i, cell) in self.cells.iter().enumerate() {
            let field = format!("cells[{i}]");
            let k =
                ob(&a, &cell.source_object, &field)? * nb + ob(&b, &cell.target_object, &field)?;
            if elements[k].is_some() {
                return Err(DocError::reference(&field, "cell listed twice"));
            }
            let mut seen = std::collections::HashSet::new();
            if let Some(e) = cell.elements.iter().find(|e| !seen.insert(e.as_str())) {
                return Err(DocError::reference(
                    &field,
                    format!("element `{e}` listed twice"),
                ));
            }
            elements[k] = Some(cell.elements.clone());
        }
        let elements: Vec<Vec<String>> = elements
            .into_iter()
            .map(Option::unwrap_or_default)
            .collect();
        let position = |k: usize, e: &str, field: &str| {
            elements[k]
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| DocError::reference(field, format!("no element `{e}` in this cell")))
        };
        let mut left: Vec<Vec<Vec<Option<usize>>>> = (0..a.num_morphisms())
            .map(|al| {
                (0..nb)
                    .map(|y| vec![None; elements[a.tgt(al) * nb + y].len()])
                    .collect()
            })
            .collect();
        for (i, act) in self.left.iter().enumerate() {
            let field = format!("left[{i}]");
            let al = mor(&a, &act.morphism, &field)?;
            let y = ob(&b, &act.target_object, &field)?;
            let from = position(a.tgt(al) * nb + y, &act.element, &field)?;
            let to = position(a.src(al) * nb + y, &act.image, &field)?;
            if left[al][y][from].replace(to).is_some() {
                return Err(DocError::reference(&field, "action listed twice"));
            }
        }
        let mut right: Vec<Vec<Vec<Option<usize>>>> = (0..b.num_morphisms())
            .map(|be| {
                (0..a.num_objects())
                    .map(|x| vec![None; elements[x * nb + b.src(be)].len()])
                    .collect()
            })
            .collect();
        for (i, act) in self.right.iter().enumerate() {
            let field = format!("right[{i}]");
            let be = mor(&b, &act.morphism, &field)?;
            let x = ob(&a, &act.source_object, &field)?;
            let from = position(x * nb + b.src(be), &act.element, &field)?;
            let to = position(x * nb + b.tgt(be), &act.image, &field)?;
            if right[be][x][from].replace(to).is_some() {
                return Err(DocError::reference(&field, "action listed twice"));
            }
        }
        let left = complete(left, "left", |al, y, i| {
            format!(
                "{} on `{}` over {}",
                a.morphism_id(al),
                elements[a.tgt(al) * nb + y][i],
                b.object_id(y)
            )
        })?;
        let right = complete(right, "right", |be, x, i| {
            format!(
                "{} on `{}` over {}",
                b.morphism_id(be),
                elements[x * nb + b.src(be)][i],
                a.object_id(x)
            )
        })?;
        Profunctor::new(a.clone(), b.clone(), elements.clone(), left, right)
            .map_err(|e| DocError::semantic("profunctor", e))
    }
}

fn complete(
    table: Vec<Vec<Vec<Option<usize>>>>,
    field: &str,
    describe: impl Fn(usize, usize, usize) -> String,
) -> DocResult<Vec<Vec<Vec<usize>>>> {
    table
        .into_iter()
        .enumerate()
        .map(|(m, per)| {
            per.into_iter()
                .enumerate()
                .map(|(o, v)| {
                    v.into_iter()
                        .enumerate()
                        .map(|(i, x)| {
                            x.ok_or_else(|| {
                                DocError::reference(
                                    field,
                                    format!("missing action of {}", describe(m, o, i)),
                                )
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// A correspondence: a total category over `[1]` (object ids `0`, `1`)
/// with identifications of its two fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceDocument {
    pub format_version: u32,
    pub total: CategoryDocument,
    pub projection: FunctorMaps,
    pub source: CategoryDocument,
    pub source_inclusion: FunctorMaps,
    pub target: CategoryDocument,
    pub target_inclusion: FunctorMaps,
}

impl CorrespondenceDocument {
    pub fn from_correspondence(c: &Correspondence) -> Self {
        CorrespondenceDocument {
            format_version: FORMAT_VERSION,
            total: CategoryDocument::from_category(&c.total),
            projection: FunctorMaps::from_functor(&c.projection),
            source: CategoryDocument::from_category(c.source()),
            source_inclusion: FunctorMaps::from_functor(&c.source_inclusion),
            target: CategoryDocument::from_category(c.target()),
            target_inclusion: FunctorMaps::from_functor(&c.target_inclusion),
        }
    }

    pub fn to_correspondence(&self) -> DocResult<Correspondence> {
        check_version(self.format_version)?;
        let total = self.total.to_valid_category("total")?;
        let one = Arc::new(catalog::interval(1));
        let projection = self
            .projection
            .to_functor(total.clone(), one, "projection")?;
        let s = self.source.to_valid_category("source")?;
        let t = self.target.to_valid_category("target")?;
        let si = self
            .source_inclusion
            .to_functor(s, total.clone(), "source_inclusion")?;
        let ti = self
            .target_inclusion
            .to_functor(t, total, "target_inclusion")?;
        Correspondence::new(projection, si, ti).map_err(|e| DocError::semantic("correspondence", e))
    }
}

/// The machine-readable outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub format_version: u32,
    /// The command line, without the program name.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certify_dim: Option<usize>,
    pub report: serde_json::Value,
    /// Wall-clock milliseconds; only present when requested, since it breaks
    /// byte-for-byte determinism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, certify_dim: Option<usize>, report: impl Serialize) -> Self {
        ReportDocument {
            format_version: FORMAT_VERSION,
            command,
            certify_dim,
            report: serde_json::to_value(report).expect("reports serialize to JSON"),
            timing_ms: None,
        }
    }
}

pub fn category_from_json(text: &str) -> DocResult<FiniteCategory> {
    parse_json::<CategoryDocument>(text)?.to_category("category")
}

pub fn category_to_json(c: &FiniteCategory) -> String {
    to_canonical_json(&CategoryDocument::from_category(c))
}

pub fn functor_from_json(text: &str) -> DocResult<Functor> {
    parse_json::<FunctorDocument>(text)?.to_functor()
}

pub fn functor_to_json(f: &Functor) -> String {
    to_canonical_json(&FunctorDocument::from_functor(f))
}

pub fn profunctor_from_json(text: &str) -> DocResult<Profunctor> {
    parse_json::<ProfunctorDocument>(text)?.to_profunctor()
}

pub fn profunctor_to_json(p: &Profunctor) -> String {
    to_canonical_json(&ProfunctorDocument::from_profunctor(p))
}

pub fn correspondence_from_json(text: &str) -> DocResult<Correspondence> {
    parse_json::<CorrespondenceDocument>(text)?.to_correspondence()
}

pub fn correspondence_to_json(c: &Correspondence) -> String {
    to_canonical_json(&CorrespondenceDocument::from_correspondence(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Violation;
    use crate::corr::{collage, hom_profunctor};

    #[test]
    fn interval_round_trips_byte_for_byte() {
        let text = category_to_json(&catalog::interval(2));
        let c = category_from_json(&text).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(category_to_json(&c), text);
        assert!(text.starts_with("{\n  \"compose\""));
    }

    #[test]
    fn missing_composite_parses_then_fails_validation() {
        let mut doc = CategoryDocument::from_category(&catalog::interval(2));
        doc.compose
            .retain(|[g, f, _]| !(g == "1->2" && f == "0->1"));
        let c = category_from_json(&to_canonical_json(&doc)).unwrap();
        let report = c.validate();
        assert!(
            report.violations.contains(&Violation::MissingComposite {
                g: "1->2".into(),
                f: "0->1".into()
            }),
            "{report}"
        );
    }

    #[test]
    fn ret_has_five_morphisms_and_validates() {
        let c = category_from_json(&category_to_json(&catalog::ret())).unwrap();
        assert_eq!(c.num_morphisms(), 5);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn schema_errors_name_the_field_and_line() {
        let text = "{\n  \"format_version\": 1,\n  \"objects\": [\"a\"],\n  \"morphisms\": [{\"id\": \"f\", \"src\": \"a\"}],\n  \"identities\": {},\n  \"compose\": []\n}";
        match category_from_json(text) {
            Err(DocError::Schema { field, line, .. }) => {
                assert_eq!(field, "morphisms[0]");
                assert_eq!(line, 4);
            }
            other => panic!("expected a schema error, got {other:?}"),
        }
        let err = category_from_json("{\"format_version\": 1, \"objects\": [], \"extra\": 0}")
            .unwrap_err();
        assert_eq!(err.exit_code(), exit::PARSE);
    }

    #[test]
    fn unknown_ids_and_versions_are_parse_errors() {
        let mut doc = CategoryDocument::from_category(&catalog::interval(1));
        doc.morphisms[1].tgt = "7".into();
        let err = category_from_json(&to_canonical_json(&doc)).unwrap_err();
        assert_eq!(err.exit_code(), exit::PARSE, "{err}");
        doc = CategoryDocument::from_category(&catalog::interval(1));
        doc.format_version = 9;
        assert!(matches!(
            category_from_json(&to_canonical_json(&doc)),
            Err(DocError::Version { found: 9 })
        ));
    }

    #[test]
    fn functor_profunctor_and_correspondence_round_trip() {
        let ar = crate::constructions::arrow_category(&Arc::new(catalog::interval(2)));
        let text = functor_to_json(&ar.ev_t);
        let f = functor_from_json(&text).unwrap();
        assert_eq!(f.morphism_map(), ar.ev_t.morphism_map());
        assert_eq!(functor_to_json(&f), text);

        let p = hom_profunctor(&Arc::new(catalog::idem()));
        let text = profunctor_to_json(&p);
        let q = profunctor_from_json(&text).unwrap();
        assert_eq!(q.cells(), p.cells());
        assert_eq!(profunctor_to_json(&q), text);

        let c = collage(&p);
        let text = correspondence_to_json(&c);
        let d = correspondence_from_json(&text).unwrap();
        assert_eq!(correspondence_to_json(&d), text);
    }

    #[test]
    fn functor_with_invalid_source_is_a_validation_error() {
        let mut doc =
            FunctorDocument::from_functor(&Functor::identity(Arc::new(catalog::interval(2))));
        doc.source.compose.pop();
        let err = functor_from_json(&to_canonical_json(&doc)).unwrap_err();
        assert_eq!(err.exit_code(), exit::VALIDATION, "{err}");
    }

    #[test]
    fn broken_functor_law_is_a_validation_error() {
        let two = Arc::new(catalog::interval(2));
        let mut doc = FunctorDocument::from_functor(&Functor::identity(two));
        doc.morphisms.insert("0->2".into(), "0->1".into());
        let err = functor_from_json(&to_canonical_json(&doc)).unwrap_err();
        assert_eq!(err.exit_code(), exit::VALIDATION, "{err}");
    }
}
