#![no_main]

use leibder::formats::{parse_algebra, to_json, AlgebraDto};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(a) = parse_algebra(text) {
            assert_eq!(parse_algebra(&to_json(&AlgebraDto::from_algebra(&a))).unwrap(), a);
        }
    }
});
