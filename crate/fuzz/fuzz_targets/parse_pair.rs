#![no_main]

use leibder::formats::{parse_pair, to_json, PairDto};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_pair(text) {
            assert_eq!(parse_pair(&to_json(&PairDto::from_pair(&p))).unwrap(), p);
        }
    }
});
