#![no_main]

use jordanian_core::NCPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = NCPoly::from_json_str(text) {
            let again = NCPoly::from_json_str(&p.to_json().to_string()).expect("re-decode");
            assert_eq!(again, p);
        }
    }
});
