#![no_main]

use leibder::exactlin::{format_scalar, parse_scalar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = parse_scalar(text) {
            assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }
    }
});
