//! State and input CSV parsing.

#![no_main]

use behavior_cones::io::{parse_input_csv, parse_state_csv, write_state_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_state_csv(text) {
        assert_eq!(parse_state_csv(&write_state_csv(&x)).expect("round trip"), x);
    }
    let _ = parse_input_csv(text);
});
