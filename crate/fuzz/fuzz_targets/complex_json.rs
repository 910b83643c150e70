#![no_main]

use k3lattice::homology::homology;
use k3lattice::io::complex_from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(c) = complex_from_json(s) else { return };
    if c.c0() <= 16 && c.c1() <= 16 {
        let h = homology(&c);
        assert_eq!(h.h0_rank() + h.rank_of_boundary(), c.c0());
    }
});
