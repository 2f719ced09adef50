//! Model JSON decoding; small models are simulated for a few steps.

#![no_main]

use behavior_cones::io::{model_to_json, parse_model_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(model) = parse_model_json(text) else {
        return;
    };
    assert_eq!(parse_model_json(&model_to_json(&model)).expect("round trip"), model);
    if model.n() <= 8 && model.m() == 0 {
        let x0 = vec![1.0; model.n()];
        let _ = model.simulate(&x0, None, 4);
    }
});
