#![no_main]

use leibder::formats::{parse_crossed, to_json, CrossedDto};
use leibder::shleibniz::check_crossed;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = parse_crossed(text) {
            assert_eq!(parse_crossed(&to_json(&CrossedDto::from_crossed(&c))).unwrap(), c);
            let _ = check_crossed(&c);
        }
    }
});
