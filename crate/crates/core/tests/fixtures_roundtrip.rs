//! The committed fixture files under `fixtures/` must stay in sync with the
//! constructors, parse loss-free, and drive the decomposition end to end.
//!
//! Regenerate the files with
//! `HYPACK_WRITE_FIXTURES=1 cargo test -p hypack-core --test fixtures_roundtrip`.

use std::path::{Path, PathBuf};

use hypack_core::truncation::{
    decompose, glued_fixture, load_fixture, regular_fixture, Fixture,
};

const FIXTURE_S: f64 = 1.2;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .canonicalize()
        .expect("fixtures directory missing")
}

fn expected() -> [(&'static str, Fixture); 2] {
    [
        ("regular.json", regular_fixture(FIXTURE_S).unwrap()),
        ("glued.json", glued_fixture(FIXTURE_S).unwrap()),
    ]
}

#[test]
fn committed_fixtures_match_constructors() {
    if std::env::var_os("HYPACK_WRITE_FIXTURES").is_some() {
        for (name, fx) in expected() {
            std::fs::write(fixture_dir().join(name), fx.to_json_string()).unwrap();
        }
    }
    for (name, fx) in expected() {
        let path = fixture_dir().join(name);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
        // Serialization is canonical, so the files must match byte for byte.
        assert_eq!(text, fx.to_json_string(), "{name} out of date");
        // And parsing must reproduce every float exactly.
        let parsed = Fixture::from_json(&text).unwrap();
        assert_eq!(parsed, fx, "{name} does not round-trip");
    }
}

#[test]
fn fixture_files_drive_the_decomposition() {
    let reg = load_fixture(&fixture_dir().join("regular.json")).unwrap();
    let (poly, base, h) = reg.build().unwrap();
    let d = decompose(&poly, &base, h).unwrap();
    assert_eq!(d.pieces.len(), 1);
    assert!(d.trace.is_empty());

    let glued = load_fixture(&fixture_dir().join("glued.json")).unwrap();
    let (poly, base, h) = glued.build().unwrap();
    let d = decompose(&poly, &base, h).unwrap();
    assert_eq!(d.pieces.len(), 2);
    assert_eq!(d.trace.len(), 1);
    for piece in &d.pieces {
        assert_eq!(piece.vertices.len(), 20);
        assert_eq!(piece.facet_count(), 10);
    }
}

#[test]
fn load_fixture_reports_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert!(load_fixture(&missing).is_err());

    let mangled = dir.path().join("mangled.json");
    std::fs::write(&mangled, "{\"dim\": 4").unwrap();
    assert!(load_fixture(&mangled).is_err());
}
