//! Trajectory CSV parsing must not panic, and accepted input must survive a
//! write/parse round trip unchanged.

#![no_main]

use behavior_cones::io::{parse_trajectory_csv, write_trajectory_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = parse_trajectory_csv(text) {
        let again = parse_trajectory_csv(&write_trajectory_csv(&w)).expect("written CSV parses");
        assert_eq!(again, w);
        let _ = behavior_cones::build_hankel(&w, 1 + w.len() / 2);
    }
});
