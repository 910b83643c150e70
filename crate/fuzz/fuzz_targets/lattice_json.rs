#![no_main]

use k3lattice::io::{lattice_from_json, lattice_to_json};
use k3lattice::lattice::discriminant_group;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(l) = lattice_from_json(s) else { return };
    let back = lattice_from_json(&lattice_to_json(&l)).expect("serialized lattice parses");
    assert_eq!(back.gram(), l.gram());
    if l.rank() <= 8 && l.is_nondegenerate() {
        let a = discriminant_group(&l).expect("nondegenerate");
        assert_eq!(a.order(), l.determinant().magnitude().clone().into());
    }
});
