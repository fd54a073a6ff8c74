#![no_main]

use libfuzzer_sys::fuzz_target;
use superalg_core::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text.parse::<Rational>() {
        let again: Rational = r.to_string().parse().expect("printed rational parses");
        assert_eq!(r, again);
    }
});
