#![no_main]

use libfuzzer_sys::fuzz_target;
use persym::FamilyShape;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(shape) = text.parse::<FamilyShape>() {
        let again: FamilyShape = shape.to_string().parse().expect("display parses back");
        assert_eq!(again, shape);
        let _ = shape.param_bits();
    }
});
