use std::path::PathBuf;

use k3lattice::fixtures::{by_name, NAMES};
use k3lattice::io::{config_from_json, config_to_json_pretty};
use k3lattice::kulikov::validate;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

#[test]
fn shipped_fixtures_match_the_builtins() {
    for name in NAMES {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let cfg = config_from_json(&text).unwrap();
        let builtin = by_name(name).unwrap();
        assert_eq!(config_to_json_pretty(&cfg), config_to_json_pretty(&builtin), "{name}");
        assert_eq!(text.trim_end(), config_to_json_pretty(&builtin), "{name}");
        assert!(validate(&cfg).unwrap().is_valid(), "{name}");
    }
    assert!(by_name("dodecahedron").is_none());
}
