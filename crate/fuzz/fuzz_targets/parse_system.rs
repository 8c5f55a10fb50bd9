#![no_main]

use libfuzzer_sys::fuzz_target;
use persym::polycount::SystemSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = text.parse::<SystemSpec>() {
        let again: SystemSpec = spec.to_string().parse().expect("display parses back");
        assert_eq!(again, spec);
        let _ = spec.family();
    }
});
