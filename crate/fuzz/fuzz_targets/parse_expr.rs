#![no_main]

use jordanian_core::exprio::parse;
use jordanian_core::ncalg::Ring;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse(text, Ring::Gl);
        let _ = parse(text, Ring::Sl);
    }
});
