#![no_main]

use libfuzzer_sys::fuzz_target;
use persym::laurent::LaurentPoint;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(point) = text.parse::<LaurentPoint>() {
        let again: LaurentPoint = point.to_string().parse().expect("display parses back");
        assert_eq!(again, point);
    }
});
