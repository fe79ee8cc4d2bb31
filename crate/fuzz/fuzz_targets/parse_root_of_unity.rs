#![no_main]

use libfuzzer_sys::fuzz_target;
use mdtk::cyclo::wire::parse_root;
use mdtk::RootOfUnity;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(z) = parse_root(text) {
        assert_eq!(z.pow(z.order() as i64), RootOfUnity::ONE);
        assert_eq!(parse_root(&serde_json::to_string(&z).unwrap()).unwrap(), z);
    }
});
