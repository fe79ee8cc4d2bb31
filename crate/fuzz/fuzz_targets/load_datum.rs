#![no_main]

use libfuzzer_sys::fuzz_target;
use mdtk::catalog::{from_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // anything accepted must survive a round trip unchanged
    if let Ok(e) = from_json(text) {
        let again = from_json(&to_json(&e.name, &e.datum, &e.notes)).expect("re-parse");
        assert_eq!(again.datum, e.datum);
    }
});
