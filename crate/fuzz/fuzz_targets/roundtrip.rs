#![no_main]

use jordanian_core::exprio::{parse, to_text};
use jordanian_core::ncalg::Ring;
use jordanian_core::NCPoly;
use libfuzzer_sys::fuzz_target;

// parse, print, parse again, and go through JSON; all three must agree
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for ring in [Ring::Gl, Ring::Sl] {
        if let Ok(p) = parse(text, ring) {
            let printed = to_text(&p);
            assert_eq!(parse(&printed, ring).expect("printed form parses"), p);
            let json = p.to_json().to_string();
            assert_eq!(NCPoly::from_json_str(&json).expect("json decodes"), p);
        }
    }
});
