#![no_main]

use leibder::formats::{parse_cochain, to_json, CochainDto};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = parse_cochain(text) {
            assert_eq!(parse_cochain(&to_json(&CochainDto::from_cochain(&c))).unwrap(), c);
        }
    }
});
