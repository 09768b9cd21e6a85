use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn fibcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcat"))
        .args(args)
        .current_dir(corpus(""))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = fibcat(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
    assert_eq!(doc["format_version"], 1);
    doc["report"].clone()
}

const KINDS: &[(&str, &str)] = &[
    ("interval-0", "category"),
    ("interval-1", "category"),
    ("interval-2", "category"),
    ("interval-3", "category"),
    ("interval-4", "category"),
    ("idem", "category"),
    ("ret", "category"),
    ("walking-iso", "category"),
    ("z2", "category"),
    ("parallel-pair", "category"),
    ("arrow-2", "category"),
    ("ends-in-2", "functor"),
    ("identity-ends-in-2", "functor"),
    ("ev-t-arrow-2", "functor"),
    ("identity-arrow-2", "functor"),
    ("hom-idem", "profunctor"),
    ("hom-ret", "profunctor"),
    ("idem-ret-p", "profunctor"),
    ("idem-ret-q", "profunctor"),
    ("identity-corr-1", "correspondence"),
    ("collage-idem-ret-p", "correspondence"),
    ("collage-idem-ret-q", "correspondence"),
];

#[test]
fn corpus_matches_the_bundled_examples() {
    let listed = String::from_utf8(fibcat(&["example"]).stdout).unwrap();
    let names: Vec<&str> = listed.lines().collect();
    assert_eq!(names, KINDS.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    for name in names {
        let emitted = fibcat(&["example", name]).stdout;
        let file = std::fs::read(corpus(&format!("{name}.json"))).unwrap();
        assert!(
            emitted == file,
            "corpus/{name}.json is stale; regenerate with `fibcat example {name}`"
        );
    }
}

#[test]
fn every_corpus_document_validates() {
    for (name, kind) in KINDS {
        let r = report(&["validate", "--kind", kind, &format!("{name}.json")]);
        assert_eq!(r["kind"], *kind);
    }
}

#[test]
fn exit_status_contract_on_planted_defects() {
    let cases: &[(&[&str], i32)] = &[
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/syntax-error.json",
            ],
            2,
        ),
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/unknown-field.json",
            ],
            2,
        ),
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/unknown-object.json",
            ],
            2,
        ),
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/future-version.json",
            ],
            2,
        ),
        (&["validate", "--kind", "category", "no-such-file.json"], 2),
        (
            &[
                "validate",
                "--kind",
                "profunctor",
                "defects/missing-action.json",
            ],
            2,
        ),
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/missing-composite.json",
            ],
            3,
        ),
        (&["homology", "defects/missing-composite.json"], 3),
        (
            &[
                "validate",
                "--kind",
                "category",
                "defects/wrong-composite-endpoints.json",
            ],
            3,
        ),
        (
            &["classify", "--functor", "defects/broken-functor-law.json"],
            3,
        ),
        (
            &[
                "validate",
                "--kind",
                "profunctor",
                "defects/non-functorial-action.json",
            ],
            3,
        ),
        (&["roundtrip", "defects/bad-projection.json"], 3),
        (
            &[
                "pushforward",
                "--fibration",
                "ends-in-2.json",
                "--over",
                "identity-ends-in-2.json",
            ],
            4,
        ),
        (
            &[
                "compose",
                "--mode",
                "prof",
                "idem-ret-p.json",
                "idem-ret-p.json",
            ],
            4,
        ),
        (&["classify"], 2),
        (&["example", "no-such-example"], 2),
    ];
    for (args, code) in cases {
        let out = fibcat(args);
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?} printed a report");
    }
}

#[test]
fn missing_composite_names_the_pair() {
    let out = fibcat(&[
        "validate",
        "--kind",
        "category",
        "defects/missing-composite.json",
    ]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("MissingComposite") && err.contains("1->2") && err.contains("0->1"),
        "{err}"
    );
}

#[test]
fn outer_edge_of_the_triangle_is_not_exponentiable() {
    let r = report(&["classify", "--functor", "ends-in-2.json"]);
    let exp = &r["exponentiable"];
    assert_eq!(exp["holds"], false);
    assert_eq!(exp["witness"]["kind"], "factorization");
    assert_eq!(exp["witness"]["objects"], 0);
}

#[test]
fn idem_ret_composites_are_identity_bimodules() {
    for (a, b) in [
        ("idem-ret-p.json", "idem-ret-q.json"),
        ("idem-ret-q.json", "idem-ret-p.json"),
    ] {
        let r = report(&["compose", "--mode", "prof", a, b]);
        assert_eq!(r["identity_bimodule"], true, "{a} then {b}");
        assert_eq!(r["route_coherence"]["holds"], true);
    }
    let r = report(&[
        "compose",
        "--mode",
        "corr",
        "collage-idem-ret-p.json",
        "collage-idem-ret-q.json",
    ]);
    assert_eq!(r["identity_bimodule"], true);
    let r = report(&[
        "compose",
        "--mode",
        "bifib",
        "idem-ret-p.json",
        "idem-ret-q.json",
    ]);
    assert_eq!(r["route_coherence"]["holds"], true);
}

#[test]
fn compose_out_writes_a_readable_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("composite.json");
    report(&[
        "compose",
        "--mode",
        "prof",
        "idem-ret-p.json",
        "idem-ret-q.json",
        "--out",
        out.to_str().unwrap(),
    ]);
    let r = report(&["validate", "--kind", "profunctor", out.to_str().unwrap()]);
    assert_eq!(r["elements"], 2);
}

#[test]
fn identity_correspondence_survives_all_six_conversions() {
    let r = report(&["roundtrip", "identity-corr-1.json"]);
    let trips = r["round_trips"].as_array().unwrap();
    assert_eq!(trips.len(), 6);
    assert!(trips.iter().all(|t| t["holds"] == true), "{r}");
}

#[test]
fn arrow_evaluation_is_final_and_cocartesian() {
    let r = report(&[
        "final",
        "--functor",
        "ev-t-arrow-2.json",
        "--certify-dim",
        "2",
    ]);
    assert_eq!(r["verdict"], true);
    let r = report(&[
        "classify",
        "--functor",
        "ev-t-arrow-2.json",
        "--certify-dim",
        "2",
    ]);
    assert_eq!(r["cocartesian"]["holds"], true);
    assert_eq!(r["left_final"]["holds"], true);
    let r = report(&["initial", "--functor", "ends-in-2.json"]);
    assert_eq!(r["verdict"], true);
}

#[test]
fn replacements_pass_their_spot_checks() {
    for kind in ["cocart", "cart", "lfib", "rfib"] {
        let r = report(&["replace", "--kind", kind, "--functor", "ends-in-2.json"]);
        assert_eq!(r["checks"]["replacement_is_fibration"], true, "{kind}");
        assert_eq!(r["checks"]["unit_over_base"], true, "{kind}");
    }
}

#[test]
fn pushforward_adjunction_spot_check() {
    let r = report(&[
        "pushforward",
        "--fibration",
        "ev-t-arrow-2.json",
        "--over",
        "identity-arrow-2.json",
    ]);
    assert!(r["adjunction"]["probes"].as_u64().unwrap() > 0);
    assert_eq!(r["adjunction"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn homology_of_the_cyclic_group_of_order_two() {
    let r = report(&["homology", "z2.json", "--max-dim", "3"]);
    let torsion: Vec<Value> = r["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["torsion"].clone())
        .collect();
    assert_eq!(
        torsion,
        vec![
            serde_json::json!([]),
            serde_json::json!([2]),
            serde_json::json!([]),
            serde_json::json!([2])
        ]
    );
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let art = dir.path().to_str().unwrap();
    let run = |threads: &str| {
        fibcat(&[
            "--threads",
            threads,
            "suite",
            "--seed",
            "11",
            "--size",
            "3",
            "--artifacts",
            art,
        ])
    };
    let (a, b) = (run("1"), run("4"));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["report"]["passed"], true);
    assert!(doc.get("timing_ms").is_none());

    let c1 = fibcat(&[
        "classify",
        "--functor",
        "ev-t-arrow-2.json",
        "--certify-dim",
        "2",
    ]);
    let c2 = fibcat(&[
        "--threads",
        "2",
        "classify",
        "--functor",
        "ev-t-arrow-2.json",
        "--certify-dim",
        "2",
    ]);
    let c3 = fibcat(&[
        "classify",
        "--functor",
        "ev-t-arrow-2.json",
        "--certify-dim",
        "2",
        "--threads=3",
    ]);
    assert_eq!(c1.stdout, c2.stdout);
    assert_eq!(c1.stdout, c3.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = fibcat(&["--timing", "homology", "interval-2.json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["timing_ms"].is_u64());
}
