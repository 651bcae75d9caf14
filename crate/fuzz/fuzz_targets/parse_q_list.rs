#![no_main]

use focklab::rational::{fmt_q_list, parse_q_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_q_list(s) {
        assert_eq!(parse_q_list(&fmt_q_list(&v)).unwrap(), v);
    }
});
