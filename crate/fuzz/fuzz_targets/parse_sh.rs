#![no_main]

use leibder::formats::{parse_sh, to_json, ShDto};
use leibder::shleibniz::check_sh;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((s, th)) = parse_sh(text) {
            let again = parse_sh(&to_json(&ShDto::from_sh(&s, th.as_ref()))).unwrap();
            assert_eq!(again, (s.clone(), th));
            // The checker must not panic on arbitrary structures.
            let _ = check_sh(&s);
        }
    }
});
