#![no_main]

use focklab::report::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Report::from_json(s) {
        let again = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(again.to_json(), r.to_json());
        let _ = r.summary_line();
    }
});
