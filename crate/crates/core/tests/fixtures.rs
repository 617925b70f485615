//! Shipped fixtures match the builders and survive a save/load round trip.

use std::path::PathBuf;

use cliffcodes::catalog::{example1, example2, load_bundle, make_pauli_bundle, save_bundle, GroupBundle};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn builders() -> Vec<GroupBundle> {
    let mut out = vec![example1(), example2()];
    out.extend((1..=3).map(|n| make_pauli_bundle(n).unwrap()));
    out
}

#[test]
fn shipped_fixtures_match_builders() {
    let regenerate = std::env::var_os("REGENERATE_FIXTURES").is_some();
    for b in builders() {
        let path = fixture_dir().join(format!("{}.json", b.name));
        if regenerate {
            save_bundle(&b, &path).unwrap();
        }
        let loaded = load_bundle(&path).unwrap();
        assert_eq!(loaded, b.canonical().unwrap(), "{}", path.display());
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, loaded.to_json(), "{} is not in canonical form", path.display());
    }
}

#[test]
fn round_trip_is_identity_on_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    for b in builders() {
        let path = dir.path().join("b.json");
        save_bundle(&b, &path).unwrap();
        let once = load_bundle(&path).unwrap();
        save_bundle(&once, &path).unwrap();
        let twice = load_bundle(&path).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, b.canonical().unwrap());
    }
}

#[test]
fn fixture_shapes() {
    let e1 = load_bundle(&fixture_dir().join("example1.json")).unwrap();
    assert_eq!((e1.cyclotomic_order, e1.degree, e1.generators.len()), (4, 4, 2));
    let e2 = load_bundle(&fixture_dir().join("example2.json")).unwrap();
    assert_eq!((e2.cyclotomic_order, e2.degree, e2.generators.len()), (12, 6, 3));
}
