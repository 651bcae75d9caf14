#![no_main]

use focklab::rational::{fmt_q, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(s) {
        assert_eq!(parse_rational(&fmt_q(&x)).unwrap(), x);
    }
});
