#![no_main]

use behavior_cones::io::{matrix_to_json, parse_matrix_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix_json(text) {
            assert_eq!(parse_matrix_json(&matrix_to_json(&m)).expect("round trip"), m);
        }
    }
});
