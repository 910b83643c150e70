#![no_main]

use k3lattice::io::{config_from_json, config_to_json_pretty};
use k3lattice::kulikov::validate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = config_from_json(s) else { return };
    let again = config_from_json(&config_to_json_pretty(&cfg)).expect("serialized config parses");
    assert_eq!(again.edges, cfg.edges);
    let _ = validate(&cfg);
});
