#![no_main]

use libfuzzer_sys::fuzz_target;
use mdtk::cyclo::wire::parse_cyc;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_cyc(text) {
        let _ = a.to_string();
        let back = parse_cyc(&serde_json::to_string(&a).unwrap()).expect("re-parse");
        assert_eq!(back, a);
        assert_eq!(a.conj().conj(), a);
    }
});
