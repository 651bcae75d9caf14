#![no_main]

use focklab::jordan::CaseDescriptor;
use libfuzzer_sys::fuzz_target;

// Catalog entries must survive a serialize/deserialize round trip.
fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<CaseDescriptor>(data) {
        let again: CaseDescriptor = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(again, c);
        let _ = c.dim_v();
    }
});
