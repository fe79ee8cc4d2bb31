#![no_main]

use libfuzzer_sys::fuzz_target;
use mdtk::construct::MetricGroup;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mg) = serde_json::from_str::<MetricGroup>(text) {
        for g in 0..mg.order() {
            assert_eq!(mg.add(g, mg.neg(g)), 0);
        }
    }
});
