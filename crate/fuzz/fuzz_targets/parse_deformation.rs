#![no_main]

use leibder::formats::{parse_deformation, to_json, DeformationDto};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(d) = parse_deformation(text) {
            assert_eq!(parse_deformation(&to_json(&DeformationDto::from_deformation(&d))).unwrap(), d);
        }
    }
});
