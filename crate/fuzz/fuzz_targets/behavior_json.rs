//! Behavior JSON decoding, followed by a membership query on small inputs.

#![no_main]

use behavior_cones::io::{behavior_to_json, parse_behavior_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(b) = parse_behavior_json(text) else {
        return;
    };
    assert_eq!(parse_behavior_json(&behavior_to_json(&b)).expect("round trip"), b);
    // keep solver work bounded
    if b.dim() <= 16 && b.generators().cols() <= 16 {
        let first = b.generators().column(0);
        let _ = b.membership(&first, 1e-8);
    }
});
