#![no_main]

use libfuzzer_sys::fuzz_target;
use superalg_core::Polynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = Polynomial::parse(text) {
        let q = Polynomial::parse(&p.to_string()).expect("printed polynomial parses");
        assert_eq!(p, q);
    }
});
