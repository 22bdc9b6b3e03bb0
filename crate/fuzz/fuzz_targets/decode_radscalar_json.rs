#![no_main]

use jordanian_core::RadScalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = RadScalar::from_json_str(text) {
            let again = RadScalar::from_json_str(&s.to_json().to_string()).expect("re-decode");
            assert_eq!(again, s);
        }
    }
});
