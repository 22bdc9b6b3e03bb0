//! Replays the checked-in fuzz corpus through the same checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use jordanian_core::exprio::{parse, to_text};
use jordanian_core::ncalg::Ring;
use jordanian_core::{NCPoly, RadScalar};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .filter_map(|entry| fs::read(entry.ok()?.path()).ok())
        .filter_map(|bytes| String::from_utf8(bytes).ok())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_seeds() {
    for text in seeds("parse_expr").into_iter().chain(seeds("roundtrip")) {
        for ring in [Ring::Gl, Ring::Sl] {
            if let Ok(p) = parse(&text, ring) {
                assert_eq!(parse(&to_text(&p), ring).unwrap(), p, "{text}");
                assert_eq!(NCPoly::from_json_str(&p.to_json().to_string()).unwrap(), p);
            }
        }
    }
}

#[test]
fn json_seeds() {
    // some seeds are deliberately malformed
    for text in seeds("decode_ncpoly_json") {
        if let Ok(p) = NCPoly::from_json_str(&text) {
            assert_eq!(NCPoly::from_json_str(&p.to_json().to_string()).unwrap(), p);
        }
    }
    for text in seeds("decode_radscalar_json") {
        if let Ok(s) = RadScalar::from_json_str(&text) {
            assert_eq!(RadScalar::from_json_str(&s.to_json().to_string()).unwrap(), s);
        }
    }
}
