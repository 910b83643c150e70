#![no_main]

use k3lattice::lattice::parse_lattice_name;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_lattice_name(s) {
        assert!(l.gram().is_symmetric());
    }
});
