//! Replays the checked-in fuzz seeds on stable so the round-trip properties the
//! fuzz targets assert are exercised by `cargo test`.

use std::fs;
use std::path::PathBuf;

use superalg_core::{sdf, Polynomial, Rational};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn sdf_seeds_round_trip() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_sdf") {
        if let Ok(a) = sdf::from_json(&text) {
            let out = sdf::to_json(&a);
            let b = sdf::from_json(&out).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(sdf::to_json(&b), out, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn polynomial_seeds_round_trip() {
    for (name, text) in seeds("parse_polynomial") {
        if let Ok(p) = Polynomial::parse(&text) {
            assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p, "{name}");
        }
    }
}

#[test]
fn rational_seeds_round_trip() {
    for (name, text) in seeds("parse_rational") {
        if let Ok(r) = text.parse::<Rational>() {
            let again: Rational = r.to_string().parse().unwrap();
            assert_eq!(r, again, "{name}");
        }
    }
    assert!("1/0".parse::<Rational>().is_err());
}
