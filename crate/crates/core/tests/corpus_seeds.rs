//! Replays the checked-in fuzz seeds through the same entry points and
//! assertions as the fuzz targets.

use std::path::PathBuf;

use k3lattice::homology::homology;
use k3lattice::io::{complex_from_json, config_from_json, config_to_json_pretty, lattice_from_json, lattice_to_json, parse_vector};
use k3lattice::kulikov::validate;
use k3lattice::lattice::{discriminant_group, parse_lattice_name};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn lattice_json_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("lattice_json") {
        let Ok(l) = lattice_from_json(&s) else { continue };
        parsed += 1;
        assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap().gram(), l.gram());
        if l.rank() <= 8 && l.is_nondegenerate() {
            let a = discriminant_group(&l).unwrap();
            assert_eq!(a.order(), l.determinant().magnitude().clone().into());
        }
    }
    assert_eq!(parsed, 4);
}

#[test]
fn lattice_name_seeds() {
    let ok = seeds("lattice_name").iter().filter(|(_, s)| parse_lattice_name(s).map(|l| l.gram().is_symmetric()).unwrap_or(false)).count();
    assert!(ok >= 5, "{ok}");
}

#[test]
fn kulikov_config_seeds() {
    for (name, s) in seeds("kulikov_config") {
        let Ok(cfg) = config_from_json(&s) else {
            assert!(name.contains("bad"), "{name} should parse");
            continue;
        };
        let again = config_from_json(&config_to_json_pretty(&cfg)).unwrap();
        assert_eq!(again.edges, cfg.edges);
        let rep = validate(&cfg);
        if ["seed_cube", "seed_cube_toric", "seed_typeII_2re"].contains(&name.as_str()) {
            assert!(rep.unwrap().is_valid(), "{name}");
        }
    }
}

#[test]
fn complex_json_seeds() {
    let mut parsed = 0;
    for (_, s) in seeds("complex_json") {
        let Ok(c) = complex_from_json(&s) else { continue };
        parsed += 1;
        let h = homology(&c);
        assert_eq!(h.h0_rank() + h.rank_of_boundary(), c.c0());
    }
    assert_eq!(parsed, 3);
}

#[test]
fn vector_seeds() {
    let results: Vec<bool> = seeds("vector").iter().map(|(_, s)| parse_vector(s).is_ok()).collect();
    assert_eq!(results, vec![false, true, true]);
}
